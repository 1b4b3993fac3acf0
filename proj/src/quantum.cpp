#include "antinomy/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace antinomy {

// ------------------------------------------------------------- matrix ops --

CMat CMat::identity(std::size_t dim) {
    CMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::dagger() const {
    CMat m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

bool CMat::is_hermitian(double eps) const {
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > eps) return false;
    return true;
}

CMat kron(const CMat& x, const CMat& y) {
    CMat m(x.n * y.n);
    for (std::size_t rx = 0; rx < x.n; ++rx)
        for (std::size_t cx = 0; cx < x.n; ++cx) {
            const cplx v = x(rx, cx);
            if (v == cplx{0, 0}) continue;
            for (std::size_t ry = 0; ry < y.n; ++ry)
                for (std::size_t cy = 0; cy < y.n; ++cy)
                    m(rx * y.n + ry, cx * y.n + cy) = v * y(ry, cy);
        }
    return m;
}

CMat mat_add(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    CMat m(x.n);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
}

CMat mat_scale(cplx s, const CMat& x) {
    CMat m(x.n);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = s * x.a[i];
    return m;
}

CMat mat_mul(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    CMat m(x.n);
    for (std::size_t r = 0; r < x.n; ++r)
        for (std::size_t k = 0; k < x.n; ++k) {
            const cplx v = x(r, k);
            if (v == cplx{0, 0}) continue;
            for (std::size_t c = 0; c < x.n; ++c) m(r, c) += v * y(k, c);
        }
    return m;
}

cplx trace_of_product(const CMat& x, const CMat& y) {
    if (x.n != y.n) throw std::invalid_argument("matrix size mismatch");
    cplx t{0, 0};
    for (std::size_t r = 0; r < x.n; ++r)
        for (std::size_t c = 0; c < x.n; ++c) t += x(r, c) * y(c, r);
    return t;
}

// --------------------------------------------------------------- spectrum --

// The Hermitian problem embeds as the doubled real symmetric one
// [[Re, -Im], [Im, Re]], whose spectrum is that of the input with every
// eigenvalue repeated twice; cyclic Jacobi then suffices.
std::vector<double> hermitian_eigenvalues(const CMat& h) {
    if (h.n == 0) return {};
    if (!h.is_hermitian(1e-7)) throw std::invalid_argument("eigenvalues: matrix is not hermitian");
    const std::size_t n = h.n, m = 2 * n;

    std::vector<double> s(m * m, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return s[r * m + c]; };
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double re = h(r, c).real(), im = h(r, c).imag();
            at(r, c) = re;
            at(n + r, n + c) = re;
            at(r, n + c) = -im;
            at(n + r, c) = im;
        }

    double frob = 0;
    for (double v : s) frob += v * v;
    const double stop = 1e-30 * std::max(1.0, frob);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += 2 * at(p, q) * at(p, q);
        if (off <= stop) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (std::size_t r = 0; r < m; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p), arq = at(r, q);
                    at(r, p) = at(p, r) = c * arp - sn * arq;
                    at(r, q) = at(q, r) = sn * arp + c * arq;
                }
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = at(q, p) = 0;
            }
    }

    std::vector<double> eig(m);
    for (std::size_t i = 0; i < m; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = eig[2 * i];
    return out;
}

// --------------------------------------------------------- process matrix --

namespace {

std::size_t dim_product(const std::vector<int>& di, const std::vector<int>& dob) {
    std::size_t d = 1;
    for (std::size_t k = 0; k < di.size(); ++k) {
        if (di[k] < 1 || dob[k] < 1) throw std::invalid_argument("quantum dimensions must be >= 1");
        d *= static_cast<std::size_t>(di[k]) * static_cast<std::size_t>(dob[k]);
    }
    return d;
}

}  // namespace

ProcessMatrix::ProcessMatrix(std::vector<int> di, std::vector<int> dob, CMat m)
    : dims_i(std::move(di)), dims_o(std::move(dob)), w(std::move(m)) {
    if (dims_i.empty() || dims_i.size() != dims_o.size())
        throw std::invalid_argument("process matrix needs matching nonempty dimension lists");
    const std::size_t d = dim_product(dims_i, dims_o);
    if (d > 64) throw std::invalid_argument("process matrix dimension exceeds 64");
    if (w.n != d) throw std::invalid_argument("process matrix has wrong dimension");
}

QuantumInstrument::QuantumInstrument(int di, int dob, int n_settings, int n_outcomes,
                                     std::vector<std::vector<CMat>> elems)
    : d_i(di), d_o(dob), settings(n_settings), outcomes(n_outcomes), element(std::move(elems)) {
    if (di < 1 || dob < 1 || n_settings < 1 || n_outcomes < 1)
        throw std::invalid_argument("instrument dimensions must be >= 1");
    if (element.size() != static_cast<std::size_t>(settings))
        throw std::invalid_argument("instrument needs one element list per setting");
    for (const auto& row : element) {
        if (row.size() != static_cast<std::size_t>(outcomes))
            throw std::invalid_argument("instrument needs one element per outcome");
        for (const auto& e : row)
            if (e.n != static_cast<std::size_t>(di) * static_cast<std::size_t>(dob))
                throw std::invalid_argument("instrument element has wrong dimension");
    }
}

bool QuantumInstrument::is_valid(double eps) const {
    for (const auto& row : element) {
        CMat sum(static_cast<std::size_t>(d_i) * static_cast<std::size_t>(d_o));
        for (const auto& e : row) {
            if (!e.is_hermitian(eps)) return false;
            const auto eig = hermitian_eigenvalues(e);
            if (!eig.empty() && eig.front() < -eps) return false;
            sum = mat_add(sum, e);
        }
        // partial trace over the outgoing factor must be the identity
        for (int r = 0; r < d_i; ++r)
            for (int c = 0; c < d_i; ++c) {
                cplx t{0, 0};
                for (int o = 0; o < d_o; ++o)
                    t += sum(static_cast<std::size_t>(r * d_o + o), static_cast<std::size_t>(c * d_o + o));
                if (std::abs(t - (r == c ? cplx{1, 0} : cplx{0, 0})) > eps) return false;
            }
    }
    return true;
}

namespace {

// Hermitian basis of d x d matrices: the identity first, every later element
// traceless (pair symmetrics/antisymmetrics plus diagonal differences).
std::vector<CMat> hermitian_basis(int d) {
    const auto n = static_cast<std::size_t>(d);
    std::vector<CMat> basis;
    basis.push_back(CMat::identity(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) {
            CMat sym(n);
            sym(r, c) = sym(c, r) = 1.0;
            basis.push_back(std::move(sym));
            CMat anti(n);
            anti(r, c) = cplx{0, -1};
            anti(c, r) = cplx{0, 1};
            basis.push_back(std::move(anti));
        }
    for (std::size_t l = 1; l < n; ++l) {
        CMat diag(n);
        for (std::size_t i = 0; i < l; ++i) diag(i, i) = 1.0;
        diag(l, l) = -static_cast<double>(l);
        basis.push_back(std::move(diag));
    }
    return basis;
}

// Affine basis of the hermitian matrices with unit partial trace over the
// second factor: Id/d_o plus every direction F (x) G with G traceless.
std::vector<CMat> cptp_affine_basis(int d_i, int d_o) {
    const auto base = mat_scale(1.0 / d_o, CMat::identity(static_cast<std::size_t>(d_i * d_o)));
    const auto fs = hermitian_basis(d_i);
    const auto gs = hermitian_basis(d_o);
    std::vector<CMat> out;
    out.push_back(base);
    for (const auto& f : fs)
        for (std::size_t q = 1; q < gs.size(); ++q) out.push_back(mat_add(base, kron(f, gs[q])));
    return out;
}

}  // namespace

bool is_valid_process_matrix(const ProcessMatrix& w, double eps, std::string* reason) {
    if (!w.w.is_hermitian(eps)) {
        if (reason) *reason = "matrix is not hermitian";
        return false;
    }
    const auto eig = hermitian_eigenvalues(w.w);
    if (!eig.empty() && eig.front() < -eps) {
        if (reason) {
            std::ostringstream os;
            os << "negative eigenvalue " << eig.front();
            *reason = os.str();
        }
        return false;
    }

    const int n = w.parties();
    std::vector<std::vector<CMat>> bases;
    std::size_t combos = 1;
    for (int k = 0; k < n; ++k) {
        bases.push_back(cptp_affine_basis(w.dims_i[static_cast<std::size_t>(k)],
                                          w.dims_o[static_cast<std::size_t>(k)]));
        combos *= bases.back().size();
    }
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    for (std::size_t j = 0; j < combos; ++j) {
        std::size_t rest = j;
        for (int k = n - 1; k >= 0; --k) {
            pick[static_cast<std::size_t>(k)] = rest % bases[static_cast<std::size_t>(k)].size();
            rest /= bases[static_cast<std::size_t>(k)].size();
        }
        CMat m = bases[0][pick[0]];
        for (int k = 1; k < n; ++k) m = kron(m, bases[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]]);
        const cplx t = trace_of_product(w.w, m);
        if (std::abs(t - cplx{1, 0}) > eps) {
            if (reason) {
                std::ostringstream os;
                os << "normalization " << t.real() << (t.imag() < 0 ? "" : "+") << t.imag()
                   << "i on affine combination " << j;
                *reason = os.str();
            }
            return false;
        }
    }
    if (reason) reason->clear();
    return true;
}

NumTable pm_correlation(const ProcessMatrix& w, const std::vector<QuantumInstrument>& instruments) {
    const int n = w.parties();
    if (static_cast<int>(instruments.size()) != n)
        throw std::invalid_argument("one instrument per party required");
    for (int k = 0; k < n; ++k)
        if (instruments[static_cast<std::size_t>(k)].d_i != w.dims_i[static_cast<std::size_t>(k)] ||
            instruments[static_cast<std::size_t>(k)].d_o != w.dims_o[static_cast<std::size_t>(k)])
            throw std::invalid_argument("instrument wiring does not match the process matrix");

    std::vector<int> m_dims(static_cast<std::size_t>(n)), d_dims(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        m_dims[static_cast<std::size_t>(k)] = instruments[static_cast<std::size_t>(k)].settings;
        d_dims[static_cast<std::size_t>(k)] = instruments[static_cast<std::size_t>(k)].outcomes;
    }
    const Scenario sc(m_dims, d_dims);
    NumTable out = NumTable::zeros(NumericMode::dbl, sc.outcome_tuples(), sc.setting_tuples());

    for (std::size_t a = 0; a < sc.setting_tuples(); ++a) {
        const auto at = sc.setting_tuple(a);
        for (std::size_t x = 0; x < sc.outcome_tuples(); ++x) {
            const auto xt = sc.outcome_tuple(x);
            CMat m = instruments[0].element[static_cast<std::size_t>(at[0])][static_cast<std::size_t>(xt[0])];
            for (int k = 1; k < n; ++k)
                m = kron(m, instruments[static_cast<std::size_t>(k)]
                                .element[static_cast<std::size_t>(at[static_cast<std::size_t>(k)])]
                                        [static_cast<std::size_t>(xt[static_cast<std::size_t>(k)])]);
            out.d(x, a) = trace_of_product(w.w, m).real();
        }
    }
    return out;
}

// ------------------------------------------------------- two-party family --

ProcessMatrix w_of_q(double q) {
    CMat z(2), xm(2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    xm(0, 1) = xm(1, 0) = 1.0;
    const CMat id2 = CMat::identity(2);

    const CMat zzzi = kron(kron(z, z), kron(z, id2));
    const CMat zixx = kron(kron(z, id2), kron(xm, xm));
    const CMat w = mat_scale(0.25, mat_add(CMat::identity(16),
                                           mat_scale(2 * q - 1, mat_add(zzzi, zixx))));
    return ProcessMatrix({2, 2}, {2, 2}, w);
}

std::vector<QuantumInstrument> gyni_instruments() {
    // setting 0: pass the qubit on unchanged, outcome pinned to 1
    CMat zero(4);
    CMat choi_id(4);
    choi_id(0, 0) = choi_id(0, 3) = choi_id(3, 0) = choi_id(3, 3) = 1.0;
    // setting 1: measure in the computational basis, then send |0>
    CMat m0(4), m1(4);
    m0(0, 0) = 1.0;  // |0><0| (x) |0><0|
    m1(2, 2) = 1.0;  // |1><1| (x) |0><0|
    QuantumInstrument inst(2, 2, 2, 2, {{zero, choi_id}, {m0, m1}});
    return {inst, inst};
}

// ------------------------------------------------------------- embeddings --

ProcessMatrix embed_classical_process(const StochasticProcess& p) {
    const ProcessDims& d = p.dims;
    const int n = d.parties();
    std::size_t dim = 1;
    for (int k = 0; k < n; ++k)
        dim *= static_cast<std::size_t>(d.dims_i[static_cast<std::size_t>(k)]) *
               static_cast<std::size_t>(d.dims_o[static_cast<std::size_t>(k)]);
    if (dim > 64) throw std::invalid_argument("classical embedding dimension exceeds 64");

    CMat w(dim);
    for (std::size_t i = 0; i < d.i_tuples(); ++i) {
        const auto it = d.i_tuple(i);
        for (std::size_t o = 0; o < d.o_tuples(); ++o) {
            const auto ot = d.o_tuple(o);
            std::size_t idx = 0;
            for (int k = 0; k < n; ++k) {
                idx = idx * static_cast<std::size_t>(d.dims_i[static_cast<std::size_t>(k)]) +
                      static_cast<std::size_t>(it[static_cast<std::size_t>(k)]);
                idx = idx * static_cast<std::size_t>(d.dims_o[static_cast<std::size_t>(k)]) +
                      static_cast<std::size_t>(ot[static_cast<std::size_t>(k)]);
            }
            w(idx, idx) = p.table.at_d(i, o);
        }
    }
    return ProcessMatrix(d.dims_i, d.dims_o, std::move(w));
}

std::vector<QuantumInstrument> embed_classical_interventions(
    const std::vector<LocalIntervention>& ops) {
    std::vector<QuantumInstrument> out;
    for (const auto& op : ops) {
        std::vector<std::vector<CMat>> elems(
            static_cast<std::size_t>(op.n_a),
            std::vector<CMat>(static_cast<std::size_t>(op.n_x),
                              CMat(static_cast<std::size_t>(op.n_i) * static_cast<std::size_t>(op.n_o))));
        for (int a = 0; a < op.n_a; ++a)
            for (int x = 0; x < op.n_x; ++x)
                for (int i = 0; i < op.n_i; ++i)
                    for (int o = 0; o < op.n_o; ++o) {
                        const auto d = static_cast<std::size_t>(i * op.n_o + o);
                        elems[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)](d, d) =
                            op.table.at_d(static_cast<std::size_t>(x * op.n_o + o),
                                          static_cast<std::size_t>(a * op.n_i + i));
                    }
        out.emplace_back(op.n_i, op.n_o, op.n_a, op.n_x, std::move(elems));
    }
    return out;
}

}  // namespace antinomy
