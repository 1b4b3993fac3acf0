// Process matrices over qubit systems: validity (positivity plus unit
// normalization against every tuple of CPTP maps, checked on a product
// affine basis), Born-rule correlations from instruments, the one-parameter
// two-party family interpolating to the causally inequivalent region, and
// diagonal embeddings of classical processes.
#pragma once

#include "antinomy/numeric.hpp"
#include "antinomy/process.hpp"
#include "antinomy/scenario.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace antinomy {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
struct CMat {
    std::size_t n = 0;
    std::vector<cplx> a;

    CMat() = default;
    explicit CMat(std::size_t dim) : n(dim), a(dim * dim, cplx{0, 0}) {}
    cplx& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

    static CMat identity(std::size_t dim);
    CMat dagger() const;
    bool is_hermitian(double eps = kEps) const;
};

CMat kron(const CMat& x, const CMat& y);
CMat mat_add(const CMat& x, const CMat& y);
CMat mat_scale(cplx s, const CMat& x);
CMat mat_mul(const CMat& x, const CMat& y);
cplx trace_of_product(const CMat& x, const CMat& y);  // Tr(x y)

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations; ascending,
// deterministic, no external dependencies. Matrices here are at most 64x64.
std::vector<double> hermitian_eigenvalues(const CMat& h);

// A process matrix on parties k = 1..N, each with input space I_k and output
// space O_k; tensor factors ordered I_1, O_1, I_2, O_2, ... Total dimension
// prod d_I * d_O <= 64.
struct ProcessMatrix {
    std::vector<int> dims_i;  // d_{I_k}
    std::vector<int> dims_o;  // d_{O_k}
    CMat w;

    ProcessMatrix(std::vector<int> di, std::vector<int> dob, CMat m);
    int parties() const { return static_cast<int>(dims_i.size()); }
    std::size_t dim() const { return w.n; }
};

// One party's instrument for every setting: element [a][x] is the
// Choi-Jamiolkowski matrix on I_k (x) O_k of the operation producing outcome
// x on setting a. Validity: every element positive semidefinite within eps
// and, for each setting, partial trace over O_k of the sum equals the
// identity on I_k within eps.
struct QuantumInstrument {
    int d_i, d_o;
    int settings, outcomes;
    std::vector<std::vector<CMat>> element;  // [a][x]

    QuantumInstrument(int di, int dob, int n_settings, int n_outcomes,
                      std::vector<std::vector<CMat>> elems);
    bool is_valid(double eps = kEps) const;
};

// W >= -eps (spectrally) and Tr[W (A_1 (x) ... (x) A_N)] = 1 for every
// combination of per-party affine-basis elements of the CPTP Choi hull
// (identity/d_O plus traceless-direction perturbations). By multilinearity
// this is equivalent to unit normalization on every CPTP tuple.
bool is_valid_process_matrix(const ProcessMatrix& w, double eps = kEps,
                             std::string* reason = nullptr);

// Born rule: p(x|a) = Tr[W (M^1_{x1|a1} (x) ... (x) M^N_{xN|aN})]. Double mode.
NumTable pm_correlation(const ProcessMatrix& w,
                        const std::vector<QuantumInstrument>& instruments);

// Two parties, qubits: W(q) = 1/4 [ Id + (2q-1)(Z I1 Z O1 Z I2 Id O2
//                                          + Z I1 Id O1 X I2 X O2) ].
// Valid for q in [ (1 - 1/sqrt2)/2, (1 + 1/sqrt2)/2 ]; out-of-range q is
// constructed anyway and flagged by is_valid_process_matrix.
ProcessMatrix w_of_q(double q);

// The two-setting, two-outcome instruments used with w_of_q: setting 0
// feeds the received qubit through unchanged (outcome fixed to 1), setting
// 1 measures in the computational basis and sends |0>.
std::vector<QuantumInstrument> gyni_instruments();

// Diagonal (classical) embedding of a stochastic process and of local
// interventions; pm_correlation on these reproduces correlation_from_process.
ProcessMatrix embed_classical_process(const StochasticProcess& p);
std::vector<QuantumInstrument> embed_classical_interventions(
    const std::vector<LocalIntervention>& ops);

}  // namespace antinomy
