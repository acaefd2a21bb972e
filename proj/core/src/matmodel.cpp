#include "weitz/matmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "weitz/errors.hpp"
#include "weitz/qk.hpp"

namespace weitz::matmodel {

using holctx::biv_coords;
using holctx::biv_dim;
using holctx::biv_matrix;
using holctx::index_pair;
using holctx::pair_index;

// --- functors ----------------------------------------------------------------

MatrixRep rep_trivial(const HolonomyContext& ctx) {
    MatrixRep rep;
    rep.ctx = &ctx;
    rep.dim = 1;
    rep.action.assign(ctx.dim_hol(), MatS(1, 1));
    rep.label = "triv";
    rep.weights[std::vector<long>(ctx.spec.total_rank(), 0)] = 1;
    return rep;
}

MatrixRep rep_dual(const MatrixRep& rep) {
    MatrixRep out;
    out.ctx = rep.ctx;
    out.dim = rep.dim;
    for (const auto& a : rep.action) {
        MatS at = a.transpose();
        out.action.push_back(Scalar(-1) * at);
    }
    out.label = "dual(" + rep.label + ")";
    for (const auto& [w, m] : rep.weights) {
        std::vector<long> neg(w.size());
        for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
        out.weights[neg] += m;
    }
    return out;
}

MatrixRep rep_tensor(const MatrixRep& a, const MatrixRep& b) {
    if (a.ctx != b.ctx) throw input_error("rep_tensor: different contexts");
    MatrixRep out;
    out.ctx = a.ctx;
    out.dim = a.dim * b.dim;
    MatS ida = MatS::identity(a.dim), idb = MatS::identity(b.dim);
    for (size_t k = 0; k < a.action.size(); ++k)
        out.action.push_back(a.action[k].kron(idb) + ida.kron(b.action[k]));
    out.label = a.label + "*" + b.label;
    out.weights = liealg::weight_multiset_product(a.weights, b.weights);
    return out;
}

namespace {

std::vector<std::vector<long>> weight_list(const std::map<std::vector<long>, long>& ws) {
    std::vector<std::vector<long>> out;
    for (const auto& [w, m] : ws)
        for (long k = 0; k < m; ++k) out.push_back(w);
    return out;
}

std::vector<long> weight_sum(const std::vector<std::vector<long>>& list,
                             const std::vector<size_t>& idx, size_t rank) {
    std::vector<long> s(rank, 0);
    for (size_t k : idx)
        for (size_t i = 0; i < s.size(); ++i) s[i] += list[k][i];
    return s;
}

void enumerate_tuples(size_t n, int p, bool strict,
                      const std::function<void(const std::vector<size_t>&)>& fn) {
    std::vector<size_t> idx(p);
    std::function<void(int, size_t)> rec = [&](int slot, size_t start) {
        if (slot == p) {
            fn(idx);
            return;
        }
        for (size_t v = start; v < n; ++v) {
            idx[slot] = v;
            rec(slot + 1, strict ? v + 1 : v);
        }
    };
    rec(0, 0);
}

}  // namespace

MatrixRep rep_lambda_power(const MatrixRep& rep, int p) {
    if (p < 0) throw input_error("lambda power: p >= 0 required");
    const size_t n = rep.dim;
    const size_t rank = rep.ctx->spec.total_rank();
    std::vector<std::vector<size_t>> basis;
    enumerate_tuples(n, p, true, [&](const std::vector<size_t>& t) { basis.push_back(t); });
    std::map<std::vector<size_t>, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;

    MatrixRep out;
    out.ctx = rep.ctx;
    out.dim = basis.size();
    for (const auto& A : rep.action) {
        MatS big(out.dim, out.dim);
        for (size_t col = 0; col < basis.size(); ++col) {
            const auto& t = basis[col];
            for (int slot = 0; slot < p; ++slot)
                for (size_t r = 0; r < n; ++r) {
                    const Scalar& c = A(r, t[slot]);
                    if (c.is_zero()) continue;
                    std::vector<size_t> u = t;
                    u[slot] = r;
                    int sign = 1;
                    bool zero = false;
                    for (int i = 0; i < p && !zero; ++i)
                        for (int j = i + 1; j < p; ++j) {
                            if (u[i] == u[j]) {
                                zero = true;
                                break;
                            }
                            if (u[i] > u[j]) {
                                std::swap(u[i], u[j]);
                                sign = -sign;
                            }
                        }
                    if (zero) continue;
                    big(index[u], col) += Scalar(sign) * c;
                }
        }
        out.action.push_back(std::move(big));
    }
    out.label = "lambda:" + std::to_string(p) + "(" + rep.label + ")";
    auto wl = weight_list(rep.weights);
    enumerate_tuples(wl.size(), p, true, [&](const std::vector<size_t>& t) {
        out.weights[weight_sum(wl, t, rank)] += 1;
    });
    return out;
}

MatrixRep rep_sym_power(const MatrixRep& rep, int p) {
    if (p < 0) throw input_error("sym power: p >= 0 required");
    const size_t n = rep.dim;
    const size_t rank = rep.ctx->spec.total_rank();
    std::vector<std::vector<size_t>> basis;
    enumerate_tuples(n, p, false, [&](const std::vector<size_t>& t) { basis.push_back(t); });
    std::map<std::vector<size_t>, size_t> index;
    for (size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;

    MatrixRep out;
    out.ctx = rep.ctx;
    out.dim = basis.size();
    for (const auto& A : rep.action) {
        MatS big(out.dim, out.dim);
        for (size_t col = 0; col < basis.size(); ++col) {
            const auto& t = basis[col];
            for (int slot = 0; slot < p; ++slot)
                for (size_t r = 0; r < n; ++r) {
                    const Scalar& c = A(r, t[slot]);
                    if (c.is_zero()) continue;
                    std::vector<size_t> u = t;
                    u[slot] = r;
                    std::sort(u.begin(), u.end());
                    big(index[u], col) += c;
                }
        }
        out.action.push_back(std::move(big));
    }
    out.label = "sym:" + std::to_string(p) + "(" + rep.label + ")";
    auto wl = weight_list(rep.weights);
    enumerate_tuples(wl.size(), p, false, [&](const std::vector<size_t>& t) {
        out.weights[weight_sum(wl, t, rank)] += 1;
    });
    return out;
}

MatrixRep rep_subspace(const MatrixRep& rep, const MatS& basis, const std::string& label,
                       std::map<std::vector<long>, long> weights) {
    MatrixRep out;
    out.ctx = rep.ctx;
    out.dim = basis.cols();
    for (const auto& A : rep.action) out.action.push_back(solve(basis, A * basis));
    out.label = label;
    out.weights = std::move(weights);
    return out;
}

MatrixRep rep_sym0_power(const MatrixRep& rep, int p) {
    if (p < 2) throw input_error("sym0 power: p >= 2 required");
    MatrixRep symp = rep_sym_power(rep, p);
    const size_t n = rep.dim;
    std::vector<std::vector<size_t>> basis, small;
    enumerate_tuples(n, p, false, [&](const std::vector<size_t>& t) { basis.push_back(t); });
    enumerate_tuples(n, p - 2, false, [&](const std::vector<size_t>& t) { small.push_back(t); });
    std::map<std::vector<size_t>, size_t> sindex;
    for (size_t k = 0; k < small.size(); ++k) sindex[small[k]] = k;
    // metric contraction = sum_j d^2/dx_j^2 on monomials
    MatS contraction(small.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
        std::vector<long> e(n, 0);
        for (size_t v : basis[col]) ++e[v];
        for (size_t j = 0; j < n; ++j) {
            if (e[j] < 2) continue;
            std::vector<size_t> u;
            std::vector<long> e2 = e;
            e2[j] -= 2;
            for (size_t v = 0; v < n; ++v)
                for (long k = 0; k < e2[v]; ++k) u.push_back(v);
            contraction(sindex[u], col) += Scalar(e[j] * (e[j] - 1));
        }
    }
    MatS null = kernel(contraction);
    auto weights = symp.weights;
    MatrixRep lower = rep_sym_power(rep, p - 2);
    for (const auto& [w, m] : lower.weights) {
        auto it = weights.find(w);
        if (it == weights.end() || it->second < m)
            throw internal_error("sym0 weight bookkeeping failed");
        it->second -= m;
        if (it->second == 0) weights.erase(it);
    }
    return rep_subspace(symp, null, "sym0:" + std::to_string(p) + "(" + rep.label + ")",
                        std::move(weights));
}

MatrixRep rep_spinor(const HolonomyContext& ctx) {
    if (!ctx.spin_enabled())
        throw structural_error("spinor representation needs a spin-enabled context");
    const int m = ctx.m;
    size_t dim = ctx.clifford[0].rows();
    MatrixRep rep;
    rep.ctx = &ctx;
    rep.dim = dim;
    for (const auto& y : ctx.hol_raw) {
        MatS act(dim, dim);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                if (is_zero(y(j, i))) continue;
                // (e_i ^ e_j) acts by (1/2) gamma_i gamma_j
                MatS gg = ctx.clifford[i] * ctx.clifford[j];
                act += Scalar(Rat(y(j, i)) / 2) * gg;
            }
        rep.action.push_back(std::move(act));
    }
    rep.label = "spinor";
    const auto& spec = ctx.spec;
    int r = spec.total_rank();
    if (m % 2 == 1) {
        std::vector<long> w(r, 0);
        w[r - 1] = 1;
        rep.weights = liealg::weight_system(spec, {w});
    } else if (m == 4) {
        rep.weights = liealg::weight_system(spec, {{1, 0}});
        for (const auto& [w, c] : liealg::weight_system(spec, {{0, 1}})) rep.weights[w] += c;
    } else {
        std::vector<long> w1(r, 0), w2(r, 0);
        w1[r - 1] = 1;
        w2[r - 2] = 1;
        rep.weights = liealg::weight_system(spec, {w1});
        for (const auto& [w, c] : liealg::weight_system(spec, {w2})) rep.weights[w] += c;
    }
    return rep;
}

MatrixRep rep_isotypic(const MatrixRep& rep, const liealg::HighestWeight& hw) {
    auto comps = holctx::split_isotypic(*rep.ctx, rep.action, rep.weights);
    for (const auto& c : comps) {
        if (!(c.label == hw)) continue;
        MatS basis = column_space_basis(c.projector);
        std::map<std::vector<long>, long> weights;
        for (const auto& [w, mw] : liealg::weight_system(rep.ctx->spec, c.label))
            weights[w] += c.multiplicity * mw;
        if (c.merged_with_dual) {
            auto dual = liealg::dual_hw(rep.ctx->spec, c.label);
            for (const auto& [w, mw] : liealg::weight_system(rep.ctx->spec, dual))
                weights[w] += c.multiplicity * mw;
        }
        std::ostringstream label;
        label << "iso[";
        for (size_t i = 0; i < hw.coords.size(); ++i) label << (i ? "," : "") << hw.coords[i];
        label << "](" << rep.label << ")";
        return rep_subspace(rep, basis, label.str(), std::move(weights));
    }
    throw input_error("rep_isotypic: component not present");
}

MatrixRep rep_cartan(const MatrixRep& a, const MatrixRep& b) {
    auto adec = liealg::decompose_by_weights(a.ctx->spec, a.weights);
    auto bdec = liealg::decompose_by_weights(b.ctx->spec, b.weights);
    if (adec.summands.size() != 1 || bdec.summands.size() != 1 || adec.summands[0].second != 1 ||
        bdec.summands[0].second != 1)
        throw structural_error("cartan summand needs irreducible tensor factors");
    liealg::HighestWeight top;
    for (size_t i = 0; i < adec.summands[0].first.coords.size(); ++i)
        top.coords.push_back(adec.summands[0].first.coords[i] + bdec.summands[0].first.coords[i]);
    MatrixRep prod = rep_tensor(a, b);
    MatrixRep out = rep_isotypic(prod, top);
    out.label = "cartan(" + a.label + "," + b.label + ")";
    return out;
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

MatrixRep rep_functor(const HolonomyContext& ctx, const std::string& expr) {
    auto parts = split_top_level(expr, '*');
    std::optional<MatrixRep> acc;
    for (const auto& raw : parts) {
        std::string tok = raw;
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ' '; }),
                  tok.end());
        if (tok.empty()) throw input_error("empty factor in expression: " + expr);
        MatrixRep r;
        auto starts = [&tok](const char* p) { return tok.rfind(p, 0) == 0; };
        if (tok == "t" || tok == "T") {
            r = ctx.tangent_rep();
        } else if (tok == "triv") {
            r = rep_trivial(ctx);
        } else if (tok == "spinor") {
            r = rep_spinor(ctx);
        } else if (starts("lambda:")) {
            r = rep_lambda_power(ctx.tangent_rep(), std::stoi(tok.substr(7)));
        } else if (starts("sym0:")) {
            r = rep_sym0_power(ctx.tangent_rep(), std::stoi(tok.substr(5)));
        } else if (starts("sym:")) {
            r = rep_sym_power(ctx.tangent_rep(), std::stoi(tok.substr(4)));
        } else if (starts("symh:")) {
            r = qk::rep_sym_h(ctx, std::stoi(tok.substr(5)));
        } else if (starts("labe:")) {
            auto nums = split_top_level(tok.substr(5), ',');
            if (nums.size() != 2) throw input_error("labe:a,b expected");
            r = qk::rep_lambda_ab_e(ctx, std::stoi(nums[0]), std::stoi(nums[1]));
        } else if (starts("dual(") && tok.back() == ')') {
            r = rep_dual(rep_functor(ctx, tok.substr(5, tok.size() - 6)));
        } else if (starts("cartan(") && tok.back() == ')') {
            auto args = split_top_level(tok.substr(7, tok.size() - 8), ',');
            if (args.size() != 2) throw input_error("cartan(a,b) expected");
            r = rep_cartan(rep_functor(ctx, args[0]), rep_functor(ctx, args[1]));
        } else {
            throw input_error("cannot parse representation atom: " + tok);
        }
        acc = acc ? rep_tensor(*acc, r) : std::move(r);
    }
    if (ctx.kind == holctx::ContextKind::Sp1Spn) qk::check_genuine_bundle(*acc);
    return *acc;
}

// --- curvature types -----------------------------------------------------------

MatQ CurvatureTensor::hol_element(const MatQ& bivector) const {
    auto c = biv_coords(bivector);
    std::vector<Rat> img(op.rows(), Rat(0));
    for (size_t i = 0; i < op.rows(); ++i)
        for (size_t j = 0; j < op.cols(); ++j)
            if (!is_zero(op(i, j)) && !is_zero(c[j])) img[i] += op(i, j) * c[j];
    return biv_matrix(ctx->m, img);
}

MatQ CurvatureTensor::hol_element_pair(int mu, int nu) const {
    int m = ctx->m;
    Rat sign = 1;
    if (mu == nu) return MatQ(m, m);
    if (mu > nu) {
        std::swap(mu, nu);
        sign = -1;
    }
    size_t col = pair_index(m, mu, nu);
    std::vector<Rat> img(op.rows());
    for (size_t i = 0; i < op.rows(); ++i) img[i] = sign * op(i, col);
    return biv_matrix(m, img);
}

Rat CurvatureTensor::component(int a, int b, int c, int d) const {
    MatQ r = hol_element_pair(a, b);
    return r(d, c);
}

MatQ CurvatureTensor::ric() const {
    int m = ctx->m;
    MatQ out(m, m);
    for (int a = 0; a < m; ++a)
        for (int mu = 0; mu < m; ++mu) {
            if (mu == a) continue;
            MatQ r = hol_element_pair(a, mu);  // R_{e_a, e_mu}
            // Ric(a,b) = sum_mu g(R_{a mu} e_mu, e_b) = sum_mu r(b, mu)
            for (int b = 0; b < m; ++b) out(a, b) += r(b, mu);
        }
    return out;
}

Rat CurvatureTensor::kappa() const { return ric().trace(); }

MatQ CurvatureTensor::ric0() const {
    MatQ r = ric();
    Rat c = kappa() / ctx->m;
    return r - c * MatQ::identity(ctx->m);
}

MatS CurvatureTensor::sym_orthonormal() const {
    size_t H = ctx->dim_hol();
    MatS out(H, H);
    for (size_t a = 0; a < H; ++a) {
        MatQ rya = hol_element(ctx->hol_raw[a]);
        auto c = holctx::project_to_hol(*ctx, rya);
        Scalar na = Scalar::sqrt_rational(ctx->hol_norm[a]);
        for (size_t b = 0; b < H; ++b) out(b, a) = c[b] / na;
    }
    for (size_t a = 0; a < H; ++a)
        for (size_t b = 0; b < a; ++b)
            if (!(out(a, b) == out(b, a))) throw internal_error("curvature matrix not symmetric");
    return out;
}

namespace {

void validate_curvature(const CurvatureTensor& r) {
    if (!(r.op.transpose() == r.op)) throw internal_error("curvature operator not symmetric");
    const MatQ& pr = r.ctx->pr_hol_matrix;
    if (!(pr * r.op == r.op) || !(r.op * pr == r.op))
        throw internal_error("curvature operator not supported on hol");
}

}  // namespace

Rat TorsionForm::component(int i, int j, int k) const {
    int v[3] = {i, j, k};
    int sign = 1;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            if (v[a] == v[b]) return Rat(0);
            if (v[a] > v[b]) {
                std::swap(v[a], v[b]);
                sign = -sign;
            }
        }
    return Rat(sign) * theta[triple_index(m, v[0], v[1], v[2])];
}

size_t TorsionForm::triple_index(int m, int i, int j, int k) {
    size_t idx = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) {
                if (a == i && b == j && c == k) return idx;
                ++idx;
            }
    throw input_error("triple_index out of range");
}

MatQ TorsionForm::torsion_map(int x) const {
    MatQ t(m, m);
    for (int y = 0; y < m; ++y)
        for (int z = 0; z < m; ++z) t(z, y) = component(x, y, z);
    return t;
}

Rat TorsionForm::g_t_wedge_t(int a, int b, int c, int d) const {
    auto dot_t = [this](int i, int j, int k, int l) {
        Rat s = 0;
        for (int r = 0; r < m; ++r) s += component(i, j, r) * component(k, l, r);
        return s;
    };
    return 2 * (dot_t(a, b, c, d) + dot_t(b, c, a, d) + dot_t(c, a, b, d));
}

MatQ CurvatureDerivative::delta_r(int x) const {
    int m = ctx->m;
    MatQ out(m, m);
    for (int mu = 0; mu < m; ++mu) {
        if (mu == x) continue;
        CurvatureTensor slice{ctx, components[mu], true};
        out -= slice.hol_element_pair(mu, x);
    }
    return out;
}

bool CurvatureDerivative::is_zero() const {
    for (const auto& c : components)
        if (!c.is_zero()) return false;
    return true;
}

// --- symmetric space data --------------------------------------------------------

namespace {

/// SymmetricSpaceData from matrices of k and p inside a defining
/// representation with g^ext = -1/2 tr(XY); the p basis must be orthonormal.
SymmetricSpaceData from_defining(const std::vector<MatS>& k_def, const std::vector<MatS>& p_def,
                                 const std::string& name) {
    SymmetricSpaceData data;
    data.m = static_cast<int>(p_def.size());
    data.name = name;
    auto ip = [](const MatS& x, const MatS& y) {
        return (Scalar(Rat(-1, 2)) * (x * y).trace()).to_rational();
    };
    for (size_t a = 0; a < p_def.size(); ++a)
        for (size_t b = 0; b <= a; ++b) {
            Rat want = (a == b) ? 1 : 0;
            if (ip(p_def[a], p_def[b]) != want)
                throw internal_error("symmetric space: p basis not orthonormal");
        }
    std::vector<MatS> k_orth;
    std::vector<Rat> k_norm;
    for (const auto& k : k_def) {
        MatS v = k;
        for (size_t i = 0; i < k_orth.size(); ++i) {
            Rat c = ip(v, k_orth[i]) / k_norm[i];
            if (!is_zero(c)) v -= Scalar(c) * k_orth[i];
        }
        Rat n = ip(v, v);
        if (is_zero(n)) continue;
        k_orth.push_back(std::move(v));
        k_norm.push_back(n);
    }
    auto p_coords = [&](const MatS& x) {
        std::vector<Rat> c(p_def.size());
        MatS res = x;
        for (size_t a = 0; a < p_def.size(); ++a) {
            c[a] = ip(x, p_def[a]);
            if (!is_zero(c[a])) res -= Scalar(c[a]) * p_def[a];
        }
        if (!res.is_zero()) throw internal_error("symmetric space: [k,p] escapes p");
        return c;
    };
    for (const auto& k : k_orth) {
        MatQ act(data.m, data.m);
        for (size_t a = 0; a < p_def.size(); ++a) {
            auto col = p_coords(commutator(k, p_def[a]));
            for (size_t r = 0; r < col.size(); ++r) act(r, a) = col[r];
        }
        if (!(act.transpose() + act).is_zero())
            throw internal_error("symmetric space: isotropy action not antisymmetric");
        data.k_action.push_back(std::move(act));
    }
    data.k_gext = k_norm;
    for (int a = 0; a < data.m; ++a)
        for (int b = a + 1; b < data.m; ++b) {
            MatS br = commutator(p_def[a], p_def[b]);
            std::vector<Rat> c(k_orth.size());
            MatS res = br;
            for (size_t i = 0; i < k_orth.size(); ++i) {
                c[i] = ip(br, k_orth[i]) / k_norm[i];
                if (!is_zero(c[i])) res -= Scalar(c[i]) * k_orth[i];
            }
            if (!res.is_zero()) throw internal_error("symmetric space: [p,p] escapes k");
            MatQ cc(c.size(), 1);
            for (size_t i = 0; i < c.size(); ++i) cc(i, 0) = c[i];
            data.bracket_pp.push_back(std::move(cc));
        }
    return data;
}

}  // namespace

SymmetricSpaceData SymmetricSpaceData::sphere(int m) {
    std::vector<MatS> k_def, p_def;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            MatQ b(m + 1, m + 1);
            b(j, i) = 1;
            b(i, j) = -1;
            k_def.push_back(to_scalar(b));
        }
    for (int a = 0; a < m; ++a) {
        MatQ b(m + 1, m + 1);
        b(m, a) = 1;
        b(a, m) = -1;
        p_def.push_back(to_scalar(b));
    }
    return from_defining(k_def, p_def, "sphere(" + std::to_string(m) + ")");
}

SymmetricSpaceData SymmetricSpaceData::complex_projective(int n) {
    // su(n+1): k = u(n), p = C^n; real coordinates e_{2a} = f_a, e_{2a+1} = i f_a.
    std::vector<MatS> k_def, p_def;
    auto E = [&](int r, int c, Scalar v) {
        MatS x(n + 1, n + 1);
        x(r, c) = v;
        return x;
    };
    Scalar I = Scalar::i();
    for (int k = 0; k < n; ++k) k_def.push_back(E(k, k, I) - E(n, n, I));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            k_def.push_back(E(k, l, Scalar(1)) - E(l, k, Scalar(1)));
            k_def.push_back(E(k, l, I) + E(l, k, I));
        }
    for (int a = 0; a < n; ++a) {
        p_def.push_back(E(a, n, Scalar(1)) - E(n, a, Scalar(1)));
        p_def.push_back(E(a, n, I) + E(n, a, I));
    }
    return from_defining(k_def, p_def, "cp(" + std::to_string(n) + ")");
}

// --- curvature models --------------------------------------------------------------

CurvatureModel curvature_constant(std::shared_ptr<const HolonomyContext> ctx, const Rat& sec) {
    CurvatureTensor r;
    r.ctx = ctx;
    r.op = (-sec) * ctx->pr_hol_matrix;
    validate_curvature(r);
    return {std::move(r), std::nullopt};
}

CurvatureModel curvature_symmetric_space(std::shared_ptr<const HolonomyContext> ctx,
                                         const SymmetricSpaceData& data) {
    if (data.m != ctx->m) throw input_error("symmetric space dimension mismatch");
    size_t P = biv_dim(ctx->m);
    CurvatureTensor r;
    r.ctx = ctx;
    r.op = MatQ(P, P);
    size_t pair = 0;
    for (int a = 0; a < ctx->m; ++a)
        for (int b = a + 1; b < ctx->m; ++b, ++pair) {
            // R_{ab} = -[[p_a, p_b], .] on p
            MatQ rab(ctx->m, ctx->m);
            for (size_t i = 0; i < data.k_action.size(); ++i) {
                const Rat& c = data.bracket_pp[pair](i, 0);
                if (!is_zero(c)) rab -= c * data.k_action[i];
            }
            auto coords = biv_coords(rab);
            for (size_t k = 0; k < P; ++k) r.op(k, pair_index(ctx->m, a, b)) = coords[k];
        }
    validate_curvature(r);
    return {std::move(r), std::nullopt};
}

CurvatureModel curvature_kaehler_const_hol_sec(std::shared_ptr<const HolonomyContext> ctx,
                                               const Rat& c) {
    if (!ctx->has_complex_structure())
        throw input_error("kaehler curvature model needs a complex-structure context");
    const MatQ& J = ctx->complex_structure;
    int m = ctx->m;
    size_t P = biv_dim(m);
    CurvatureTensor r;
    r.ctx = ctx;
    r.op = MatQ(P, P);
    Rat q = c / 4;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            MatQ rab(m, m);
            for (int z = 0; z < m; ++z) {
                // R(e_a, e_b) e_z for constant holomorphic sectional curvature c:
                // q ( g(Y,Z) X - g(X,Z) Y + g(JY,Z) JX - g(JX,Z) JY - 2 g(JX,Y) JZ )
                if (z == b) rab(a, z) += q;
                if (z == a) rab(b, z) -= q;
                for (int w = 0; w < m; ++w)
                    rab(w, z) += q * (J(z, b) * J(w, a) - J(z, a) * J(w, b) - 2 * J(b, a) * J(w, z));
            }
            auto coords = biv_coords(rab);
            for (size_t k = 0; k < P; ++k) r.op(k, pair_index(m, a, b)) = coords[k];
        }
    validate_curvature(r);
    return {std::move(r), std::nullopt};
}

namespace {

Rat& four_at(std::vector<Rat>& t, int m, int a, int b, int c, int d) {
    return t[((static_cast<size_t>(a) * m + b) * m + c) * m + d];
}

}  // namespace

CurvatureModel curvature_random_bianchi(std::shared_ptr<const HolonomyContext> ctx,
                                        std::uint64_t seed) {
    Rng rng(seed);
    int m = ctx->m;
    size_t P = biv_dim(m);
    CurvatureTensor r;
    r.ctx = ctx;
    if (ctx->dim_perp() == 0) {
        // random 4-tensor, antisymmetrize pairs, symmetrize pair exchange,
        // then subtract the alternating part (first-Bianchi projection)
        std::vector<Rat> t(static_cast<size_t>(m) * m * m * m);
        for (auto& x : t) x = rng.rational(4, 2);
        auto raw = [&](int a, int b, int c, int d) { return four_at(t, m, a, b, c, d); };
        std::vector<Rat> s(t.size());
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d) {
                        Rat v = raw(a, b, c, d) - raw(b, a, c, d) - raw(a, b, d, c) +
                                raw(b, a, d, c);
                        Rat w = raw(c, d, a, b) - raw(d, c, a, b) - raw(c, d, b, a) +
                                raw(d, c, b, a);
                        four_at(s, m, a, b, c, d) = (v + w) / 8;
                    }
        auto S = [&](int a, int b, int c, int d) { return four_at(s, m, a, b, c, d); };
        r.op = MatQ(P, P);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    for (int d = c + 1; d < m; ++d) {
                        Rat bian = (S(a, b, c, d) + S(b, c, a, d) + S(c, a, b, d)) / 3;
                        r.op(pair_index(m, a, b), pair_index(m, c, d)) = S(a, b, c, d) - bian;
                    }
    } else {
        // hol-invariant curvature space: Sym^2 hol cut by first Bianchi
        std::vector<MatQ> basis;
        size_t H = ctx->dim_hol();
        for (size_t al = 0; al < H; ++al)
            for (size_t be = al; be < H; ++be) {
                auto ya = biv_coords(ctx->hol_raw[al]);
                auto yb = biv_coords(ctx->hol_raw[be]);
                MatQ op(P, P);
                for (size_t i = 0; i < P; ++i)
                    for (size_t j = 0; j < P; ++j) {
                        Rat v = ya[i] * yb[j] + yb[i] * ya[j];
                        if (!is_zero(v)) op(i, j) = v;
                    }
                basis.push_back(std::move(op));
            }
        std::vector<std::array<int, 4>> rows;
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = b + 1; c < m; ++c)
                    for (int d = 0; d < m; ++d) rows.push_back({a, b, c, d});
        MatQ constraints(rows.size(), basis.size());
        for (size_t kb = 0; kb < basis.size(); ++kb) {
            CurvatureTensor probe{ctx, basis[kb], true};
            for (size_t kr = 0; kr < rows.size(); ++kr) {
                auto [a, b, c, d] = rows[kr];
                constraints(kr, kb) = probe.component(a, b, c, d) + probe.component(b, c, a, d) +
                                      probe.component(c, a, b, d);
            }
        }
        MatQ null = kernel(constraints);
        r.op = MatQ(P, P);
        for (size_t col = 0; col < null.cols(); ++col) {
            Rat coef = rng.rational(4, 2);
            if (is_zero(coef)) continue;
            for (size_t kb = 0; kb < basis.size(); ++kb)
                if (!is_zero(null(kb, col))) r.op += (coef * null(kb, col)) * basis[kb];
        }
    }
    validate_curvature(r);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = 0; d < m; ++d) {
                    Rat s = r.component(a, b, c, d) + r.component(b, c, a, d) +
                            r.component(c, a, b, d);
                    if (!is_zero(s)) throw internal_error("random_bianchi violates first Bianchi");
                }
    return {std::move(r), std::nullopt};
}

CurvatureModel curvature_lie_group(std::shared_ptr<const HolonomyContext> ctx,
                                   const std::string& algebra, const Rat& t) {
    if (algebra != "su2") throw input_error("lie_group model supports algebra su2");
    if (ctx->m != 3) throw input_error("su2 lie group model needs an SO(3) context");
    // bi-invariant metric with [e_i, e_j] = 2 eps_{ijk} e_k; nabla^t has
    // torsion T = t[X,Y] and curvature ((t^2-1)/4)[[X,Y], Z].
    const Rat c(2);
    CurvatureTensor r;
    r.ctx = ctx;
    r.op = ((t * t - 1) * c * c / 4) * MatQ::identity(biv_dim(3));
    validate_curvature(r);
    CurvatureModel out{std::move(r), std::nullopt};
    if (!is_zero(t)) {
        TorsionForm tf;
        tf.m = 3;
        tf.theta = {t * c};
        out.torsion = std::move(tf);
        out.curvature.torsion_free = false;
    }
    return out;
}

// --- q(R) ----------------------------------------------------------------------------

MatS action_of_hol_element(const HolonomyContext& ctx, const MatrixRep& rep, const MatQ& h) {
    MatS out(rep.dim, rep.dim);
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a) {
        Rat s = 0;
        const MatQ& y = ctx.hol_raw[a];
        for (size_t i = 0; i < h.rows(); ++i)
            for (size_t j = 0; j < h.cols(); ++j)
                if (!is_zero(h(i, j)) && !is_zero(y(i, j))) s += h(i, j) * y(i, j);
        Rat coef = s / (2 * ctx.hol_norm[a]);
        if (is_zero(coef)) continue;
        Scalar cs{coef};
        for (size_t i = 0; i < rep.dim; ++i)
            for (size_t j = 0; j < rep.dim; ++j)
                if (!rep.action[a](i, j).is_zero()) out(i, j) += cs * rep.action[a](i, j);
    }
    return out;
}

namespace {

MatS q_basis_from_op(const HolonomyContext& ctx, const MatrixRep& rep, const MatQ& op) {
    MatS q(rep.dim, rep.dim);
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a) {
        // R(Y_a) in hol
        auto c = biv_coords(ctx.hol_raw[a]);
        std::vector<Rat> img(op.rows(), Rat(0));
        for (size_t i = 0; i < op.rows(); ++i)
            for (size_t j = 0; j < op.cols(); ++j)
                if (!is_zero(op(i, j)) && !is_zero(c[j])) img[i] += op(i, j) * c[j];
        MatS r_act = action_of_hol_element(ctx, rep, biv_matrix(ctx.m, img));
        MatS term = rep.action[a] * r_act;
        Scalar cs{1 / ctx.hol_norm[a]};
        for (size_t i = 0; i < rep.dim; ++i)
            for (size_t j = 0; j < rep.dim; ++j)
                if (!term(i, j).is_zero()) q(i, j) += cs * term(i, j);
    }
    return q;
}

}  // namespace

MatS q_of_R_definition(const HolonomyContext& ctx, const MatrixRep& rep,
                       const CurvatureTensor& r) {
    const int m = ctx.m;
    MatS q(rep.dim, rep.dim);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = mu + 1; nu < m; ++nu) {
            MatQ biv(m, m);
            biv(nu, mu) = 1;
            biv(mu, nu) = -1;
            MatS pr_act = action_of_hol_element(ctx, rep, ctx.project_matrix(biv));
            MatS r_act = action_of_hol_element(ctx, rep, r.hol_element_pair(mu, nu));
            q += pr_act * r_act;
        }
    return q;
}

MatS q_of_R_basis(const HolonomyContext& ctx, const MatrixRep& rep, const CurvatureTensor& r) {
    return q_basis_from_op(ctx, rep, r.op);
}

MatS q_of_R(const HolonomyContext& ctx, const MatrixRep& rep, const CurvatureTensor& r) {
    MatS qa = q_of_R_definition(ctx, rep, r);
    MatS qb = q_of_R_basis(ctx, rep, r);
    if (!(qa == qb)) throw internal_error("q(R): frame-pair and hol-basis evaluations disagree");
    return qa;
}

MatS q_of_slice(const HolonomyContext& ctx, const MatrixRep& rep, const MatQ& slice_op) {
    return q_basis_from_op(ctx, rep, slice_op);
}

}  // namespace weitz::matmodel
