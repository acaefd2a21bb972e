#include "weitz/qk.hpp"

#include <algorithm>
#include <functional>

#include "weitz/errors.hpp"
#include "weitz/matmodel.hpp"

namespace weitz::qk {

using holctx::ContextKind;

Models build_models(const HolonomyContext& ctx) {
    if (ctx.kind != ContextKind::Sp1Spn)
        throw structural_error("H/E models need a Sp(1)Sp(n) context");
    Models mod;
    mod.ctx = &ctx;
    mod.n = ctx.m / 4;
    const int n = mod.n, m = ctx.m;

    // Eigenbasis of right multiplication by i: h1 (x) E = +i eigenspace of R_i
    // spanned by P_+ f over the block vectors "1" and "j"; the h2 (x) E half
    // is its image under R_j, so the tensor split holds by construction.
    const MatQ& ri = ctx.hol_raw[ctx.factor_indices[0][0]];
    const MatQ& rj = ctx.hol_raw[ctx.factor_indices[0][1]];
    MatS id = MatS::identity(m);
    MatS p_plus = Scalar(rat(1, 2)) * (id - Scalar::i() * to_scalar(ri));
    MatS frame(m, 2 * n);  // real block vectors 1, j
    for (int a = 0; a < n; ++a) {
        frame(4 * a, 2 * a) = Scalar(1);
        frame(4 * a + 2, 2 * a + 1) = Scalar(1);
    }
    MatS ebasis = p_plus * frame;            // m x 2n, basis of h1 (x) E
    MatS ebar = to_scalar(rj) * ebasis;      // h2 (x) E
    MatS full(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < 2 * n; ++c) {
            full(r, c) = ebasis(r, c);
            full(r, 2 * n + c) = ebar(r, c);
        }

    for (size_t k = 0; k < ctx.hol_raw.size(); ++k) {
        bool is_sp1 = std::find(ctx.factor_indices[0].begin(), ctx.factor_indices[0].end(), k) !=
                      ctx.factor_indices[0].end();
        MatS act = to_scalar(ctx.hol_raw[k]);
        MatS rep = solve(full, act * full);
        if (is_sp1) {
            MatS h(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) h(r, c) = rep(r * 2 * n, c * 2 * n);
            if (!(rep == h.kron(MatS::identity(2 * n))))
                throw internal_error("sp(1) action is not h (x) id in the H/E splitting");
            mod.h_action.push_back(std::move(h));
            mod.e_action.push_back(MatS(2 * n, 2 * n));
        } else {
            MatS e(2 * n, 2 * n);
            for (int r = 0; r < 2 * n; ++r)
                for (int c = 0; c < 2 * n; ++c) e(r, c) = rep(r, c);
            if (!(rep == MatS::identity(2).kron(e)))
                throw internal_error("sp(n) action is not id (x) e in the H/E splitting");
            mod.h_action.push_back(MatS(2, 2));
            mod.e_action.push_back(std::move(e));
        }
    }

    // invariant symplectic form on E: kernel of the coadjoint constraints
    size_t pairs = static_cast<size_t>(2 * n) * (2 * n - 1) / 2;
    auto pidx = [n](int i, int j) { return holctx::pair_index(2 * n, i, j); };
    std::vector<MatS> spn;
    for (size_t k = 0; k < ctx.hol_raw.size(); ++k)
        if (!mod.e_action[k].is_zero()) spn.push_back(mod.e_action[k]);
    MatS constraints(spn.size() * pairs, pairs);
    for (size_t s = 0; s < spn.size(); ++s) {
        const MatS& L = spn[s];
        for (int i = 0; i < 2 * n; ++i)
            for (int j = i + 1; j < 2 * n; ++j) {
                size_t row = s * pairs + pidx(i, j);
                // (L^T W + W L)_{ij} as a linear map of the coefficients w_{kl}
                for (int k = 0; k < 2 * n; ++k) {
                    // W_{kj} L_{ki}: W antisymmetric in (k, j)
                    if (k != j) {
                        Scalar sgn = (k < j) ? Scalar(1) : Scalar(-1);
                        size_t col = (k < j) ? pidx(k, j) : pidx(j, k);
                        constraints(row, col) += sgn * L(k, i);
                    }
                    if (k != i) {
                        Scalar sgn = (i < k) ? Scalar(1) : Scalar(-1);
                        size_t col = (i < k) ? pidx(i, k) : pidx(k, i);
                        constraints(row, col) += sgn * L(k, j);
                    }
                }
            }
    }
    MatS null = kernel(constraints);
    if (null.cols() != 1) throw internal_error("symplectic form on E is not unique");
    mod.omega = MatS(2 * n, 2 * n);
    Scalar norm;
    for (int i = 0; i < 2 * n && norm.is_zero(); ++i)
        for (int j = i + 1; j < 2 * n; ++j)
            if (!null(pidx(i, j), 0).is_zero()) {
                norm = null(pidx(i, j), 0);
                break;
            }
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j) {
            Scalar v = null(pidx(i, j), 0) / norm;
            mod.omega(i, j) = v;
            mod.omega(j, i) = -v;
        }
    return mod;
}

namespace {

std::vector<long> zero_weight(const HolonomyContext& ctx) {
    return std::vector<long>(ctx.spec.total_rank(), 0);
}

MatrixRep h_base_rep(const HolonomyContext& ctx, const Models& mod) {
    MatrixRep rep;
    rep.ctx = &ctx;
    rep.dim = 2;
    rep.action = mod.h_action;
    rep.label = "H";
    auto w = zero_weight(ctx);
    w[0] = 1;
    rep.weights[w] = 1;
    w[0] = -1;
    rep.weights[w] = 1;
    return rep;
}

MatrixRep e_base_rep(const HolonomyContext& ctx, const Models& mod) {
    MatrixRep rep;
    rep.ctx = &ctx;
    rep.dim = 2 * mod.n;
    rep.action = mod.e_action;
    rep.label = "E";
    auto w = zero_weight(ctx);
    w[1] = 1;
    rep.weights = liealg::weight_system(ctx.spec, {w});
    return rep;
}

}  // namespace

MatrixRep rep_sym_h(const HolonomyContext& ctx, int k) {
    if (k < 0) throw input_error("symh needs k >= 0");
    Models mod = build_models(ctx);
    MatrixRep h = h_base_rep(ctx, mod);
    MatrixRep out = matmodel::rep_sym_power(h, k);
    out.label = "symh:" + std::to_string(k);
    return out;
}

MatrixRep rep_lambda_ab_e(const HolonomyContext& ctx, int a, int b) {
    Models mod = build_models(ctx);
    if (a < b || b < 0 || a > mod.n)
        throw input_error("labe:a,b needs n >= a >= b >= 0");
    MatrixRep e = e_base_rep(ctx, mod);
    if (a == 0) {
        MatrixRep out = matmodel::rep_trivial(ctx);
        out.label = "labe:0,0";
        return out;
    }
    MatrixRep la = matmodel::rep_lambda_power(e, a);
    MatrixRep lb = matmodel::rep_lambda_power(e, b);
    // isotypic component of the Cartan weight inside Lambda^a E (x) Lambda^b E
    MatrixRep prod = (b == 0) ? la : matmodel::rep_tensor(la, lb);
    std::vector<long> top = zero_weight(ctx);
    top[a] += 1;  // omega_a of the Cn factor sits at coordinate a (0 is C1)
    if (b >= 1) top[b] += 1;
    MatrixRep out = matmodel::rep_isotypic(prod, {top});
    out.label = "labe:" + std::to_string(a) + "," + std::to_string(b);
    return out;
}

bool weight_parity_odd(const liealg::LieAlgebraSpec& spec, const std::vector<long>& w) {
    if (spec.factors.size() != 2 || spec.factors[0].family != liealg::Family::C ||
        spec.factors[1].family != liealg::Family::C)
        throw input_error("parity check is for C1 x Cn weights");
    long parity = w[0];
    for (size_t i = 1; i < w.size(); ++i) parity += static_cast<long>(i) * w[i];
    return parity % 2 != 0;
}

void check_genuine_bundle(const MatrixRep& rep) {
    for (const auto& [w, m] : rep.weights)
        if (m > 0 && weight_parity_odd(rep.ctx->spec, w))
            throw structural_error(
                "not a genuine Sp(1)Sp(n) bundle: odd total power of H and E (" + rep.label + ")");
}

LambdaE lambda_e(int n, int degree) {
    LambdaE le;
    le.n = n;
    le.degree = degree;
    if (degree < 0 || degree > 2 * n) {
        le.dim = 0;
        return le;
    }
    std::function<void(size_t, std::vector<size_t>&)> rec = [&](size_t start,
                                                                std::vector<size_t>& cur) {
        if (static_cast<int>(cur.size()) == degree) {
            le.basis.push_back(cur);
            return;
        }
        for (size_t k = start; k < static_cast<size_t>(2 * n); ++k) {
            cur.push_back(k);
            rec(k + 1, cur);
            cur.pop_back();
        }
    };
    std::vector<size_t> cur;
    rec(0, cur);
    le.dim = le.basis.size();
    return le;
}

namespace {

size_t tuple_index(const LambdaE& le, const std::vector<size_t>& t) {
    auto it = std::lower_bound(le.basis.begin(), le.basis.end(), t);
    if (it == le.basis.end() || *it != t) throw internal_error("lambda_e: tuple not found");
    return static_cast<size_t>(it - le.basis.begin());
}

}  // namespace

MatS wedge_op(const Models&, const LambdaE& from, const LambdaE& to,
              const std::vector<Scalar>& v) {
    MatS out(to.dim, from.dim);
    if (to.degree != from.degree + 1) throw input_error("wedge_op: degree mismatch");
    for (size_t col = 0; col < from.dim; ++col) {
        const auto& t = from.basis[col];
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            if (std::find(t.begin(), t.end(), k) != t.end()) continue;
            std::vector<size_t> u = t;
            u.insert(u.begin(), k);
            int sign = 1;
            for (size_t i = 0; i + 1 < u.size(); ++i) {
                if (u[i] > u[i + 1]) {
                    std::swap(u[i], u[i + 1]);
                    sign = -sign;
                } else {
                    break;
                }
            }
            out(tuple_index(to, u), col) += Scalar(sign) * v[k];
        }
    }
    return out;
}

MatS contract_op(const Models& mod, const LambdaE& from, const LambdaE& to,
                 const std::vector<Scalar>& v) {
    // insertion of the omega-dual of v: eta -> omega(v, .) contracted
    MatS out(to.dim, from.dim);
    if (to.degree != from.degree - 1) throw input_error("contract_op: degree mismatch");
    int twoN = 2 * mod.n;
    std::vector<Scalar> cov(twoN);  // omega(v, e_k)
    for (int k = 0; k < twoN; ++k) {
        Scalar s;
        for (int l = 0; l < twoN; ++l)
            if (!v[l].is_zero() && !mod.omega(l, k).is_zero()) s += v[l] * mod.omega(l, k);
        cov[k] = s;
    }
    for (size_t col = 0; col < from.dim; ++col) {
        const auto& t = from.basis[col];
        for (size_t pos = 0; pos < t.size(); ++pos) {
            if (cov[t[pos]].is_zero()) continue;
            std::vector<size_t> u = t;
            u.erase(u.begin() + pos);
            Scalar sgn((pos % 2 == 0) ? 1 : -1);
            out(tuple_index(to, u), col) += sgn * cov[t[pos]];
        }
    }
    return out;
}

MatS primitive_inclusion(const Models& mod, int a) {
    LambdaE la = lambda_e(mod.n, a);
    if (a < 2) return MatS::identity(la.dim);
    LambdaE lo = lambda_e(mod.n, a - 2);
    // contraction with omega itself: sum over pairs in the tuple
    MatS contr(lo.dim, la.dim);
    for (size_t col = 0; col < la.dim; ++col) {
        const auto& t = la.basis[col];
        for (size_t s = 0; s < t.size(); ++s)
            for (size_t u = s + 1; u < t.size(); ++u) {
                const Scalar& w = mod.omega(t[s], t[u]);
                if (w.is_zero()) continue;
                std::vector<size_t> rest;
                for (size_t j = 0; j < t.size(); ++j)
                    if (j != s && j != u) rest.push_back(t[j]);
                int sign = ((s + u) % 2 == 1) ? 1 : -1;  // (-1)^{s+u-1}
                contr(tuple_index(lo, rest), col) += Scalar(sign) * w;
            }
    }
    return kernel(contr);
}

MatS lambda_action(const LambdaE& le, const MatS& e_mat) {
    MatS out(le.dim, le.dim);
    for (size_t col = 0; col < le.dim; ++col) {
        const auto& t = le.basis[col];
        for (size_t slot = 0; slot < t.size(); ++slot)
            for (size_t r = 0; r < e_mat.rows(); ++r) {
                const Scalar& c = e_mat(r, t[slot]);
                if (c.is_zero()) continue;
                std::vector<size_t> u = t;
                u[slot] = r;
                int sign = 1;
                bool zero = false;
                for (size_t i = 0; i < u.size() && !zero; ++i)
                    for (size_t j = i + 1; j < u.size(); ++j) {
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
                out(tuple_index(le, u), col) += Scalar(sign) * c;
            }
    }
    return out;
}

}  // namespace weitz::qk
