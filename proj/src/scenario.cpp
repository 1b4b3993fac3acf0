#include "antinomy/scenario.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace antinomy {

// ---------------------------------------------------------------- numeric --

std::string rat_to_string(const Rat& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (s.empty() || slash == 0 || (slash != std::string::npos && slash + 1 == s.size()))
        throw std::invalid_argument("bad rational literal '" + s + "'");
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument(std::string("bad rational literal '") + s + "': " + e.what());
    }
}

NumTable NumTable::zeros(NumericMode m, std::size_t rows, std::size_t cols) {
    NumTable t;
    t.mode = m;
    t.rows = rows;
    t.cols = cols;
    if (m == NumericMode::rational)
        t.rq.assign(rows * cols, Rat(0));
    else
        t.rd.assign(rows * cols, 0.0);
    return t;
}

NumTable NumTable::to_mode(NumericMode m) const {
    if (m == mode) return *this;
    if (m == NumericMode::rational)
        throw std::invalid_argument("cannot promote a double table to rational");
    NumTable t = zeros(NumericMode::dbl, rows, cols);
    for (std::size_t i = 0; i < rq.size(); ++i) t.rd[i] = to_double(rq[i]);
    return t;
}

bool NumTable::entry_equal(const NumTable& other, double eps) const {
    if (rows != other.rows || cols != other.cols) return false;
    if (mode == NumericMode::rational && other.mode == NumericMode::rational)
        return rq == other.rq;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (std::abs(at_d(r, c) - other.at_d(r, c)) > eps) return false;
    return true;
}

// --------------------------------------------------------------- scenario --

namespace {

std::size_t checked_product(const std::vector<int>& dims) {
    std::size_t p = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("scenario dimensions must be >= 1");
        p *= static_cast<std::size_t>(d);
    }
    return p;
}

std::size_t tuple_index(const std::vector<int>& t, const std::vector<int>& dims) {
    if (t.size() != dims.size()) throw std::invalid_argument("tuple arity mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (t[k] < 0 || t[k] >= dims[k]) throw std::out_of_range("tuple entry out of range");
        idx = idx * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(t[k]);
    }
    return idx;
}

std::vector<int> tuple_of_index(std::size_t idx, const std::vector<int>& dims) {
    std::vector<int> t(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        t[k] = static_cast<int>(idx % static_cast<std::size_t>(dims[k]));
        idx /= static_cast<std::size_t>(dims[k]);
    }
    return t;
}

}  // namespace

Scenario::Scenario(std::vector<int> m, std::vector<int> d)
    : settings(std::move(m)), outcomes(std::move(d)) {
    if (settings.empty() || settings.size() != outcomes.size())
        throw std::invalid_argument("scenario needs matching nonempty settings/outcomes lists");
    checked_product(settings);
    checked_product(outcomes);
}

Scenario Scenario::uniform(int n, int m, int d) {
    if (n < 1) throw std::invalid_argument("scenario needs at least one party");
    return Scenario(std::vector<int>(n, m), std::vector<int>(n, d));
}

std::size_t Scenario::setting_tuples() const { return checked_product(settings); }
std::size_t Scenario::outcome_tuples() const { return checked_product(outcomes); }
std::size_t Scenario::setting_index(const std::vector<int>& a) const { return tuple_index(a, settings); }
std::size_t Scenario::outcome_index(const std::vector<int>& x) const { return tuple_index(x, outcomes); }
std::vector<int> Scenario::setting_tuple(std::size_t idx) const { return tuple_of_index(idx, settings); }
std::vector<int> Scenario::outcome_tuple(std::size_t idx) const { return tuple_of_index(idx, outcomes); }

// ------------------------------------------------------------ correlation --

Correlation::Correlation(Scenario sc, NumTable t) : scenario(std::move(sc)), table(std::move(t)) {
    if (table.rows != scenario.outcome_tuples() || table.cols != scenario.setting_tuples())
        throw std::invalid_argument("correlation table shape does not match scenario");
    if (table.is_rational()) {
        for (const Rat& v : table.rq)
            if (v < 0) throw std::invalid_argument("correlation entries must be nonnegative");
        for (std::size_t c = 0; c < table.cols; ++c) {
            Rat s(0);
            for (std::size_t r = 0; r < table.rows; ++r) s += table.q(r, c);
            if (s != 1) throw std::invalid_argument("correlation columns must sum to one");
        }
    } else {
        for (double v : table.rd)
            if (v < -kEps) throw std::invalid_argument("correlation entries must be nonnegative");
        for (std::size_t c = 0; c < table.cols; ++c) {
            double s = 0;
            for (std::size_t r = 0; r < table.rows; ++r) s += table.d(r, c);
            if (std::abs(s - 1.0) > kEps)
                throw std::invalid_argument("correlation columns must sum to one");
        }
    }
}

// ----------------------------------------------------------------- vertex --

Vertex::Vertex(Scenario sc, std::vector<std::uint32_t> table)
    : scenario(std::move(sc)), f(std::move(table)) {
    if (f.size() != scenario.setting_tuples())
        throw std::invalid_argument("vertex table must have one entry per setting tuple");
    const std::size_t lim = scenario.outcome_tuples();
    for (auto v : f)
        if (v >= lim) throw std::invalid_argument("vertex outcome index out of range");
}

int Vertex::outcome_of(int party, std::size_t s) const {
    std::size_t idx = f[s];
    // peel mixed-radix digits from the least significant party upward
    for (int k = scenario.parties() - 1; k > party; --k)
        idx /= static_cast<std::size_t>(scenario.outcomes[k]);
    return static_cast<int>(idx % static_cast<std::size_t>(scenario.outcomes[party]));
}

Correlation vertex_to_correlation(const Vertex& v, NumericMode mode) {
    NumTable t = NumTable::zeros(mode, v.scenario.outcome_tuples(), v.scenario.setting_tuples());
    for (std::size_t s = 0; s < v.f.size(); ++s) {
        if (mode == NumericMode::rational)
            t.q(v.f[s], s) = 1;
        else
            t.d(v.f[s], s) = 1.0;
    }
    return Correlation(v.scenario, std::move(t));
}

Digraph signalling_graph(const Vertex& v) {
    const Scenario& sc = v.scenario;
    const int n = sc.parties();
    Digraph g(n);
    // stride of party k in the setting-tuple index
    std::vector<std::size_t> stride(n, 1);
    for (int k = n - 2; k >= 0; --k)
        stride[k] = stride[k + 1] * static_cast<std::size_t>(sc.settings[k + 1]);
    const std::size_t total = sc.setting_tuples();
    for (int k = 0; k < n; ++k) {          // sender
        for (int l = 0; l < n; ++l) {      // receiver
            if (k == l) continue;
            bool depends = false;
            for (std::size_t s = 0; s < total && !depends; ++s) {
                const int ak = static_cast<int>((s / stride[k]) % static_cast<std::size_t>(sc.settings[k]));
                if (ak != 0) continue;  // compare each a_k = 0 slice against the others
                const int base = v.outcome_of(l, s);
                for (int w = 1; w < sc.settings[k]; ++w) {
                    if (v.outcome_of(l, s + stride[k] * static_cast<std::size_t>(w)) != base) {
                        depends = true;
                        break;
                    }
                }
            }
            if (depends) g.add_edge(k, l);
        }
    }
    return g;
}

Correlation mix(const std::vector<WeightedCorrelation>& terms) {
    if (terms.empty()) throw std::invalid_argument("mix needs at least one term");
    const Scenario& sc = terms.front().p->scenario;
    NumericMode mode = terms.front().mode;
    for (const auto& t : terms) {
        if (!(t.p->scenario == sc)) throw std::invalid_argument("mix: mismatched scenarios");
        mode = promote(mode, t.mode);
        mode = promote(mode, t.p->table.mode);
    }
    const std::size_t rows = sc.outcome_tuples(), cols = sc.setting_tuples();
    NumTable out = NumTable::zeros(mode, rows, cols);
    if (mode == NumericMode::rational) {
        Rat wsum(0);
        for (const auto& t : terms) {
            if (t.wq < 0) throw std::invalid_argument("mix: negative weight");
            wsum += t.wq;
            for (std::size_t i = 0; i < rows * cols; ++i) out.rq[i] += t.wq * t.p->table.rq[i];
        }
        if (wsum != 1) throw std::invalid_argument("mix: weights must sum to one");
    } else {
        double wsum = 0;
        for (const auto& t : terms) {
            const double w = t.mode == NumericMode::rational ? to_double(t.wq) : t.wd;
            if (w < -kEps) throw std::invalid_argument("mix: negative weight");
            wsum += w;
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) out.d(r, c) += w * t.p->table.at_d(r, c);
        }
        if (std::abs(wsum - 1.0) > kEps) throw std::invalid_argument("mix: weights must sum to one");
    }
    return Correlation(sc, std::move(out));
}

NumTable marginal(const Correlation& p, int party) {
    const Scenario& sc = p.scenario;
    if (party < 0 || party >= sc.parties()) throw std::out_of_range("marginal: bad party");
    const int dk = sc.outcomes[party];
    NumTable out = NumTable::zeros(p.table.mode, static_cast<std::size_t>(dk), p.cols());
    for (std::size_t c = 0; c < p.cols(); ++c) {
        for (std::size_t r = 0; r < p.rows(); ++r) {
            std::size_t idx = r;
            for (int k = sc.parties() - 1; k > party; --k)
                idx /= static_cast<std::size_t>(sc.outcomes[k]);
            const auto xk = idx % static_cast<std::size_t>(dk);
            if (p.table.is_rational())
                out.q(xk, c) += p.table.q(r, c);
            else
                out.d(xk, c) += p.table.d(r, c);
        }
    }
    return out;
}

}  // namespace antinomy
