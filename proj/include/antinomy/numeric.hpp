// Dual-mode arithmetic: exact rationals (canonical num/den) or IEEE doubles
// with a fixed comparison tolerance. Tables carry one mode; mixing promotes
// to double. Anything touching irrational constants (1/sqrt(2)) lives in
// double mode by construction.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace antinomy {

using Rat = boost::multiprecision::cpp_rational;

enum class NumericMode { rational, dbl };

// Comparison tolerance for double mode. Every approximate equality in the
// library goes through this single constant.
inline constexpr double kEps = 1e-9;

inline NumericMode promote(NumericMode a, NumericMode b) {
    return (a == NumericMode::rational && b == NumericMode::rational)
               ? NumericMode::rational
               : NumericMode::dbl;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// "num/den" in lowest terms ("num" alone when den == 1), e.g. "3/4", "-1/2", "2".
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

// A dense numeric table in exactly one of the two modes. Row-major storage;
// the interpretation of rows/cols is fixed by the owner (correlations put
// outcome tuples on rows, setting tuples on columns).
struct NumTable {
    NumericMode mode = NumericMode::rational;
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> rq;   // active when mode == rational
    std::vector<double> rd;  // active when mode == dbl

    static NumTable zeros(NumericMode m, std::size_t rows, std::size_t cols);

    std::size_t size() const { return rows * cols; }
    bool is_rational() const { return mode == NumericMode::rational; }

    Rat& q(std::size_t r, std::size_t c) { return rq[r * cols + c]; }
    const Rat& q(std::size_t r, std::size_t c) const { return rq[r * cols + c]; }
    double& d(std::size_t r, std::size_t c) { return rd[r * cols + c]; }
    double d(std::size_t r, std::size_t c) const { return rd[r * cols + c]; }

    // Value as double regardless of mode (for reporting / double-mode math).
    double at_d(std::size_t r, std::size_t c) const {
        return is_rational() ? to_double(q(r, c)) : d(r, c);
    }

    NumTable to_mode(NumericMode m) const;  // rational -> double allowed; double -> rational refused

    bool entry_equal(const NumTable& other, double eps = kEps) const;
};

}  // namespace antinomy
