#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "weitz/errors.hpp"
#include "weitz/matmodel.hpp"

namespace weitz::matmodel {

using holctx::biv_dim;
using holctx::ContextKind;

namespace {

/// Sym^2 T as explicit symmetric matrices with the commutator action; returns
/// the representation together with the matrix basis (trace-free part only
/// when trace_free is set).
std::pair<MatrixRep, std::vector<MatQ>> sym2_matrix_rep(const HolonomyContext& ctx,
                                                        bool trace_free) {
    int m = ctx.m;
    std::vector<MatQ> basis;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            MatQ b(m, m);
            if (i == j) {
                if (trace_free) continue;
                b(i, i) = 1;
            } else {
                b(i, j) = 1;
                b(j, i) = 1;
            }
            basis.push_back(b);
        }
    if (trace_free)
        for (int k = 1; k < m; ++k) {
            MatQ b(m, m);
            b(0, 0) = 1;
            b(k, k) = -1;
            basis.push_back(b);
        }
    // expansion of a symmetric matrix in this basis, by linear solve
    MatQ table(static_cast<size_t>(m) * m, basis.size());
    for (size_t k = 0; k < basis.size(); ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) table(static_cast<size_t>(i) * m + j, k) = basis[k](i, j);

    MatrixRep rep;
    rep.ctx = &ctx;
    rep.dim = basis.size();
    for (const auto& y : ctx.hol_raw) {
        MatQ act(basis.size(), basis.size());
        for (size_t k = 0; k < basis.size(); ++k) {
            MatQ img = commutator(y, basis[k]);
            MatQ rhs(static_cast<size_t>(m) * m, 1);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) rhs(static_cast<size_t>(i) * m + j, 0) = img(i, j);
            MatQ coef = solve(table, rhs);
            for (size_t r = 0; r < basis.size(); ++r) act(r, k) = coef(r, 0);
        }
        rep.action.push_back(to_scalar(act));
    }
    rep.label = trace_free ? "sym0:2" : "sym:2";
    MatrixRep tan = ctx.tangent_rep();
    MatrixRep symp = rep_sym_power(tan, 2);
    rep.weights = symp.weights;
    if (trace_free) {
        auto it = rep.weights.find(std::vector<long>(ctx.spec.total_rank(), 0));
        if (it == rep.weights.end() || it->second < 1)
            throw internal_error("sym2 weight bookkeeping");
        if (--it->second == 0) rep.weights.erase(it);
    }
    return {std::move(rep), std::move(basis)};
}

MatQ expand_in_basis(const std::vector<MatQ>& basis, const MatQ& x) {
    int m = static_cast<int>(x.rows());
    MatQ table(static_cast<size_t>(m) * m, basis.size()), rhs(static_cast<size_t>(m) * m, 1);
    for (size_t k = 0; k < basis.size(); ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) table(static_cast<size_t>(i) * m + j, k) = basis[k](i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rhs(static_cast<size_t>(i) * m + j, 0) = x(i, j);
    return solve(table, rhs);
}

/// Antiholomorphic-forms model on a U(n) context: Lambda(beta_1..beta_n) with
/// beta_k = e^2k - i e^{2k+1} (flat duals), Clifford multiplication
/// X . = sqrt2 (pr^{10}X-flat wedge - pr^{01}X contraction), and the
/// restriction of the so-forms action for u(n)-elements.
struct AntiholModel {
    int n = 0;
    size_t dim = 0;                          // 2^n
    std::vector<std::vector<size_t>> basis;  // subsets of {0..n-1}, sorted
    std::map<std::vector<size_t>, size_t> index;

    MatS wedge(int k) const {  // beta_k ^ .
        MatS w(dim, dim);
        for (size_t col = 0; col < dim; ++col) {
            const auto& s = basis[col];
            if (std::find(s.begin(), s.end(), static_cast<size_t>(k)) != s.end()) continue;
            std::vector<size_t> t = s;
            t.push_back(k);
            int sign = 1;
            for (int i = static_cast<int>(t.size()) - 1; i > 0; --i) {
                if (t[i - 1] > t[i]) {
                    std::swap(t[i - 1], t[i]);
                    sign = -sign;
                } else {
                    break;
                }
            }
            w(index.at(t), col) = Scalar(sign);
        }
        return w;
    }

    MatS contract(int k) const {  // insertion of the vector dual to beta_k
        MatS c(dim, dim);
        for (size_t col = 0; col < dim; ++col) {
            const auto& s = basis[col];
            auto it = std::find(s.begin(), s.end(), static_cast<size_t>(k));
            if (it == s.end()) continue;
            int pos = static_cast<int>(it - s.begin());
            std::vector<size_t> t = s;
            t.erase(t.begin() + pos);
            c(index.at(t), col) = Scalar(pos % 2 == 0 ? 1 : -1);
        }
        return c;
    }
};

AntiholModel antihol_model(int n) {
    AntiholModel mod;
    mod.n = n;
    std::function<void(size_t, std::vector<size_t>&)> rec = [&](size_t start,
                                                                std::vector<size_t>& cur) {
        mod.basis.push_back(cur);
        for (size_t k = start; k < static_cast<size_t>(n); ++k) {
            cur.push_back(k);
            rec(k + 1, cur);
            cur.pop_back();
        }
    };
    std::vector<size_t> cur;
    rec(0, cur);
    std::sort(mod.basis.begin(), mod.basis.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    mod.dim = mod.basis.size();
    for (size_t k = 0; k < mod.dim; ++k) mod.index[mod.basis[k]] = k;
    return mod;
}

/// Clifford multiplication by the real coordinate vector e_r.
MatS antihol_clifford(const AntiholModel& mod, int r) {
    int k = r / 2;
    // pr10(e_2k)-flat = beta_k / 2, pr01(e_2k) inserts with coefficient delta
    // pr10(e_2k+1)-flat = (i/2) beta_k, pr01(e_2k+1) inserts with -i delta
    Scalar wedge_coef = (r % 2 == 0) ? Scalar(rat(1, 2)) : Scalar(rat(1, 2)) * Scalar::i();
    Scalar contr_coef = (r % 2 == 0) ? Scalar(1) : -Scalar::i();
    MatS out = wedge_coef * mod.wedge(k) - contr_coef * mod.contract(k);
    return Scalar::r2() * out;
}

/// Restriction of the so(2n) action on complex forms to the span of the
/// beta_k: a bivector H acts on 1-forms by omega -> -omega(H .), extended as
/// a derivation.
MatS antihol_so_action(const AntiholModel& mod, const MatQ& h) {
    int n = mod.n;
    // action on the beta generators: beta_k -> sum_l c_{lk} beta_l
    MatS gen(n, n);
    for (int k = 0; k < n; ++k) {
        // -beta_k(H e_r) for the complexified matrix; must stay in span(beta)
        // beta_k(v) for real vector v: v_{2k} - i v_{2k+1}
        // image 1-form: omega(e_r) = -beta_k(H e_r)
        std::vector<Scalar> comp(2 * n);
        for (int r = 0; r < 2 * n; ++r) {
            Scalar v = Scalar(-h(2 * k, r)) + Scalar::i() * Scalar(h(2 * k + 1, r));
            comp[r] = v;
        }
        // expand omega = sum_l (a_l beta_l): a_l = comp[2l] and consistency
        // comp[2l+1] == -i a_l
        for (int l = 0; l < n; ++l) {
            Scalar a = comp[2 * l];
            if (!(comp[2 * l + 1] == -(Scalar::i() * a)))
                throw structural_error("bivector does not preserve antiholomorphic forms");
            gen(l, k) = a;
        }
    }
    // derivation extension
    MatS out(mod.dim, mod.dim);
    for (size_t col = 0; col < mod.dim; ++col) {
        const auto& s = mod.basis[col];
        for (size_t pos = 0; pos < s.size(); ++pos)
            for (int l = 0; l < n; ++l) {
                const Scalar& c = gen(l, s[pos]);
                if (c.is_zero()) continue;
                std::vector<size_t> t = s;
                t[pos] = l;
                // sort with sign / drop repeats
                int sign = 1;
                bool zero = false;
                for (size_t i = 0; i < t.size() && !zero; ++i)
                    for (size_t j = i + 1; j < t.size(); ++j) {
                        if (t[i] == t[j]) {
                            zero = true;
                            break;
                        }
                        if (t[i] > t[j]) {
                            std::swap(t[i], t[j]);
                            sign = -sign;
                        }
                    }
                if (zero) continue;
                out(mod.index.at(t), col) += Scalar(sign) * c;
            }
    }
    return out;
}

}  // namespace

IdentitiesReport curvature_identities_check(const HolonomyContext& ctx, const CurvatureTensor& r,
                                            const std::optional<TorsionForm>& torsion,
                                            const std::vector<MatrixRep>& reps,
                                            const SymmetricSpaceData* symmetric_data) {
    IdentitiesReport report;
    const int m = ctx.m;
    auto add = [&report](const std::string& name, bool ok, const std::string& note = "") {
        report.checks.push_back({name, ok, note});
    };

    // (1) first Bianchi with the (1/2) g(T^T) right-hand side
    {
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = a + 1; b < m && ok; ++b)
                for (int c = b + 1; c < m && ok; ++c)
                    for (int d = 0; d < m; ++d) {
                        Rat lhs = r.component(a, b, c, d) + r.component(b, c, a, d) +
                                  r.component(c, a, b, d);
                        Rat rhs = torsion ? torsion->g_t_wedge_t(a, b, c, d) / 2 : Rat(0);
                        if (lhs != rhs) {
                            ok = false;
                            break;
                        }
                    }
        add("first-bianchi", ok);
    }
    // (2) pair symmetry
    {
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = a + 1; b < m && ok; ++b)
                for (int c = 0; c < m && ok; ++c)
                    for (int d = c + 1; d < m; ++d)
                        if (r.component(a, b, c, d) != r.component(c, d, a, b)) {
                            ok = false;
                            break;
                        }
        add("pair-symmetry", ok);
    }
    // (3) Ric symmetric
    MatQ ric = r.ric();
    add("ricci-symmetric", ric.transpose() == ric);
    // (4) q(R) on T equals Ric
    {
        MatrixRep tan = ctx.tangent_rep();
        MatS q = q_of_R(ctx, tan, r);
        add("q-on-tangent-is-ricci", to_rational(q) == ric);
    }
    // (5) q(R) on Sym^2_0 equals 2 R-ring + Der_Ric, and R-ring h is symmetric
    {
        auto [rep, basis] = sym2_matrix_rep(ctx, /*trace_free=*/true);
        MatS q = q_of_R(ctx, rep, r);
        bool ring_symmetric = true;
        MatQ rhs(rep.dim, rep.dim);
        for (size_t k = 0; k < basis.size(); ++k) {
            const MatQ& h = basis[k];
            MatQ ring(m, m);
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y) {
                    Rat s = 0;
                    // sum_mu h(R_{x mu} y, mu)
                    for (int mu = 0; mu < m; ++mu) {
                        if (mu == x) continue;
                        MatQ rxmu = r.hol_element_pair(x, mu);
                        for (int c = 0; c < m; ++c)
                            if (!is_zero(rxmu(c, y)) && !is_zero(h(c, mu))) s += rxmu(c, y) * h(c, mu);
                    }
                    ring(x, y) = s;
                }
            if (!(ring.transpose() == ring)) ring_symmetric = false;
            MatQ val = Rat(2) * ring + ric * h + h * ric;
            MatQ coef = expand_in_basis(basis, val);
            for (size_t rr = 0; rr < rep.dim; ++rr) rhs(rr, k) = coef(rr, 0);
        }
        add("ring-R-symmetric", ring_symmetric);
        add("q-on-sym20-weitzenboeck", to_rational(q) == rhs);
    }
    // (6) Kaehler/spinor discrepancy on U(n) contexts
    if (ctx.kind == ContextKind::U) {
        int n = m / 2;
        AntiholModel mod = antihol_model(n);
        const MatQ& J = ctx.complex_structure;
        bool ok = true;
        for (int a = 0; a < m && ok; ++a)
            for (int b = a + 1; b < m; ++b) {
                MatQ biv(m, m);
                biv(b, a) = 1;
                biv(a, b) = -1;
                MatQ pr = ctx.project_matrix(biv);
                // forms action of the projected bivector
                MatS star = antihol_so_action(mod, pr);
                // spinor action: (X ^ Y) *_Sigma = (1/2)(X.Y. + g(X,Y)); expand
                // pr over coordinate pairs
                MatS star_sigma(mod.dim, mod.dim);
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j) {
                        if (is_zero(pr(j, i))) continue;
                        MatS cc = antihol_clifford(mod, i) * antihol_clifford(mod, j);
                        star_sigma += Scalar(Rat(pr(j, i)) / 2) * cc;
                    }
                MatS diff = star_sigma - star;
                MatS want =
                    (-Scalar::i() * Scalar(J(b, a))) * MatS::identity(mod.dim);  // -i g(J e_a, e_b)
                if (!(diff == want)) {
                    ok = false;
                    break;
                }
            }
        add("kaehler-spinor-discrepancy", ok);
    }
    // (7) symmetric-space models: q(R) is the isotropy Casimir
    if (symmetric_data) {
        bool ok = true;
        std::string note;
        for (const auto& rep : reps) {
            MatS q = q_of_R(ctx, rep, r);
            MatS cas(rep.dim, rep.dim);
            for (size_t i = 0; i < symmetric_data->k_action.size(); ++i) {
                MatS act = action_of_hol_element(ctx, rep, symmetric_data->k_action[i]);
                MatS sq = act * act;
                cas -= Scalar(1 / symmetric_data->k_gext[i]) * sq;
            }
            if (!(q == cas)) {
                ok = false;
                note = "failed on " + rep.label;
                break;
            }
        }
        add("symmetric-space-casimir", ok, note);
    }
    return report;
}

// --- Grassmannian integral ------------------------------------------------------

namespace {

/// Exact spherical moment E[x_{i1} ... x_{i2k}] on S^{m-1}: pairing sum over
/// products of deltas divided by m(m+2)...(m+2k-2).
Rat sphere_moment(int m, std::vector<int> idx) {
    if (idx.size() % 2 == 1) return Rat(0);
    if (idx.empty()) return Rat(1);
    // sum over perfect matchings
    std::function<long(std::vector<int>&)> match = [&](std::vector<int>& v) -> long {
        if (v.empty()) return 1;
        long total = 0;
        int first = v[0];
        for (size_t k = 1; k < v.size(); ++k) {
            if (v[k] != first) continue;
            std::vector<int> rest;
            for (size_t j = 1; j < v.size(); ++j)
                if (j != k) rest.push_back(v[j]);
            total += match(rest);
        }
        return total;
    };
    long num = match(idx);
    Rat den = 1;
    for (size_t j = 0; j * 2 < idx.size(); ++j) den *= (m + 2 * static_cast<int>(j));
    return Rat(num) / den;
}

/// E over orthonormal 2-frames (X, Y) of the monomial
/// X_{x1}..X_{xp} Y_{y1}..Y_{yq} with q in {2, 4}.
class FrameMoments {
public:
    explicit FrameMoments(int m) : m_(m) {}

    Rat moment(std::vector<int> xs, std::vector<int> ys) {
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        std::uint64_t key = 1;
        for (int v : xs) key = key * 16 + v + 1;
        key = key * 16 + 15;
        for (int v : ys) key = key * 16 + v + 1;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Rat val = compute(xs, ys);
        cache_.emplace(key, val);
        return val;
    }

private:
    // E_Y|X over the unit sphere of X-perp: plug Q = delta - XX and reduce to
    // spherical moments of X.
    Rat compute(const std::vector<int>& xs, const std::vector<int>& ys) {
        std::vector<std::pair<int, int>> pairings;
        if (ys.size() == 2) {
            return q_term(xs, {{ys[0], ys[1]}}) / (m_ - 1);
        }
        if (ys.size() != 4) throw internal_error("frame moment: unsupported Y degree");
        Rat total = q_term(xs, {{ys[0], ys[1]}, {ys[2], ys[3]}}) +
                    q_term(xs, {{ys[0], ys[2]}, {ys[1], ys[3]}}) +
                    q_term(xs, {{ys[0], ys[3]}, {ys[1], ys[2]}});
        return total / ((m_ - 1) * (m_ + 1));
    }

    // E_X[ X-monomial * prod Q_{ab} ] with Q_{ab} = delta_ab - X_a X_b
    Rat q_term(const std::vector<int>& xs, const std::vector<std::pair<int, int>>& qs) {
        Rat total = 0;
        size_t nq = qs.size();
        for (size_t mask = 0; mask < (1u << nq); ++mask) {
            int sign = 1;
            std::vector<int> idx = xs;
            Rat delta_part = 1;
            for (size_t k = 0; k < nq; ++k) {
                if (mask & (1u << k)) {
                    sign = -sign;
                    idx.push_back(qs[k].first);
                    idx.push_back(qs[k].second);
                } else if (qs[k].first != qs[k].second) {
                    delta_part = 0;
                    break;
                }
            }
            if (is_zero(delta_part)) continue;
            total += Rat(sign) * sphere_moment(m_, idx);
        }
        return total;
    }

    int m_;
    std::map<std::uint64_t, Rat> cache_;
};

Rat binom(int n, int k) {
    Rat r = 1;
    for (int i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
    return r;
}

MatS grassmann_rhs(const HolonomyContext& ctx, const CurvatureTensor& r, const MatrixRep& rep,
                   const Rat& lambda, const std::optional<TorsionForm>& torsion) {
    const int m = ctx.m;
    // Casimir term
    MatS cas = holctx::casimir_operator(ctx, rep.action);
    Rat kappa = r.kappa();
    Rat cas_coef = lambda * (m + 2) * (m + 1) / 12 - kappa * (m + 4) / (12 * m);
    MatS rhs = Scalar(cas_coef) * cas;
    // Ric0 double projection sum over ordered pairs
    MatQ ric0 = r.ric0();
    std::vector<MatS> pr_act(m * m);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
            if (mu == nu) continue;
            MatQ biv(m, m);
            biv(nu, mu) = 1;
            biv(mu, nu) = -1;
            pr_act[mu * m + nu] = action_of_hol_element(ctx, rep, ctx.project_matrix(biv));
        }
    MatS ric_term(rep.dim, rep.dim);
    for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
            if (mu == nu) continue;
            // pr(Ric0 e_mu ^ e_nu) = sum_c ric0(c,mu) pr(e_c ^ e_nu)
            MatS left(rep.dim, rep.dim);
            for (int c = 0; c < m; ++c) {
                if (c == nu || is_zero(ric0(c, mu))) continue;
                left += Scalar(ric0(c, mu)) * pr_act[c * m + nu];
            }
            ric_term += left * pr_act[mu * m + nu];
        }
    rhs += ric_term;
    // -(1/2) q(R)
    rhs += Scalar(rat(-1, 2)) * q_of_R_basis(ctx, rep, r);
    // torsion quadruple sum
    if (torsion) {
        MatS tor(rep.dim, rep.dim);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b) continue;
                for (int c = 0; c < m; ++c)
                    for (int d = 0; d < m; ++d) {
                        if (c == d) continue;
                        Rat coef = torsion->g_t_wedge_t(a, b, c, d);
                        if (is_zero(coef)) continue;
                        tor += Scalar(coef) * (pr_act[a * m + b] * pr_act[c * m + d]);
                    }
            }
        rhs += Scalar(rat(1, 48)) * tor;
    }
    return rhs;
}

}  // namespace

GrassmannReport grassmann_integral_check(const HolonomyContext& ctx, const CurvatureTensor& r,
                                         const MatrixRep& rep, const Rat& lambda,
                                         const std::optional<TorsionForm>& torsion,
                                         std::uint64_t samples, std::uint64_t seed) {
    const int m = ctx.m;
    GrassmannReport report;
    MatS rhs = grassmann_rhs(ctx, r, rep, lambda, torsion);

    if (m <= 4) {
        report.exact_mode = true;
        FrameMoments fm(m);
        // C(ab, a'b') = E[(sec - lambda) X_a Y_b X_a' Y_b'] as an m^2 x m^2 table
        std::vector<MatS> pr_act(m * m, MatS(rep.dim, rep.dim));
        for (int mu = 0; mu < m; ++mu)
            for (int nu = 0; nu < m; ++nu) {
                if (mu == nu) continue;
                MatQ biv(m, m);
                biv(nu, mu) = 1;
                biv(mu, nu) = -1;
                pr_act[mu * m + nu] = action_of_hol_element(ctx, rep, ctx.project_matrix(biv));
            }
        MatS lhs(rep.dim, rep.dim);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b) continue;
                for (int ap = 0; ap < m; ++ap)
                    for (int bp = 0; bp < m; ++bp) {
                        if (ap == bp) continue;
                        Rat coef = 0;
                        for (int c = 0; c < m; ++c)
                            for (int d = 0; d < m; ++d) {
                                if (c == d) continue;
                                for (int e = 0; e < m; ++e)
                                    for (int f = 0; f < m; ++f) {
                                        if (e == f) continue;
                                        Rat rr = r.component(c, d, e, f);
                                        if (is_zero(rr)) continue;
                                        // sec term X_c Y_d Y_e X_f
                                        coef += rr * fm.moment({a, ap, c, f}, {b, bp, d, e});
                                    }
                            }
                        coef -= lambda * fm.moment({a, ap}, {b, bp});
                        if (!is_zero(coef))
                            lhs += Scalar(coef) * (pr_act[a * m + b] * pr_act[ap * m + bp]);
                    }
            }
        lhs = Scalar(binom(m + 2, 4)) * lhs;
        MatS diff = lhs - rhs;
        report.max_exact_deviation = Rat(0);
        bool zero = diff.is_zero();
        if (!zero) {
            for (size_t i = 0; i < diff.rows(); ++i)
                for (size_t j = 0; j < diff.cols(); ++j) {
                    double v = std::abs(diff(i, j).to_double_real()) +
                               std::abs(diff(i, j).to_double_imag());
                    if (v > to_double(report.max_exact_deviation))
                        report.max_exact_deviation = Rat(v);
                }
        }
        report.passed = zero;
        report.note = zero ? "exact agreement" : "exact-mode mismatch: paper-constant flag";
        return report;
    }

    // Monte Carlo mode
    if (samples < 10000) throw input_error("grassmann monte carlo needs samples >= 10^4");
    report.exact_mode = false;
    Rng rng(seed);
    using Cd = std::complex<double>;
    size_t d = rep.dim;
    // double views
    std::vector<std::vector<Cd>> rhs_d(d, std::vector<Cd>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            rhs_d[i][j] = Cd(rhs(i, j).to_double_real(), rhs(i, j).to_double_imag());
    // dense double 4-tensor of R and double rep actions per bivector pair
    std::vector<double> rt(static_cast<size_t>(m) * m * m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                for (int dd = 0; dd < m; ++dd)
                    rt[((static_cast<size_t>(a) * m + b) * m + c) * m + dd] =
                        to_double(r.component(a, b, c, dd));
    std::vector<std::vector<std::vector<Cd>>> pr_d(
        biv_dim(m), std::vector<std::vector<Cd>>(d, std::vector<Cd>(d)));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            MatQ biv(m, m);
            biv(j, i) = 1;
            biv(i, j) = -1;
            MatS act = action_of_hol_element(ctx, rep, ctx.project_matrix(biv));
            auto& slot = pr_d[holctx::pair_index(m, i, j)];
            for (size_t rr = 0; rr < d; ++rr)
                for (size_t cc = 0; cc < d; ++cc)
                    slot[rr][cc] = Cd(act(rr, cc).to_double_real(), act(rr, cc).to_double_imag());
        }
    std::vector<std::vector<double>> mean_re(d, std::vector<double>(d, 0.0)),
        mean_im(d, std::vector<double>(d, 0.0)), m2(d, std::vector<double>(d, 0.0));
    std::vector<double> x(m), y(m);
    std::vector<Cd> pxy(d * d), val(d * d);
    double pref = to_double(binom(m + 2, 4));
    for (std::uint64_t s = 0; s < samples; ++s) {
        // orthonormal 2-frame
        double nx = 0, ny = 0, dot = 0;
        for (int i = 0; i < m; ++i) {
            x[i] = rng.normal();
            nx += x[i] * x[i];
        }
        nx = std::sqrt(nx);
        for (int i = 0; i < m; ++i) x[i] /= nx;
        for (int i = 0; i < m; ++i) {
            y[i] = rng.normal();
            dot += y[i] * x[i];
        }
        for (int i = 0; i < m; ++i) {
            y[i] -= dot * x[i];
            ny += y[i] * y[i];
        }
        ny = std::sqrt(ny);
        for (int i = 0; i < m; ++i) y[i] /= ny;
        // sec(X, Y) and pr(X ^ Y) action
        double sec = 0;
        for (int c = 0; c < m; ++c)
            for (int dd2 = 0; dd2 < m; ++dd2)
                for (int e = 0; e < m; ++e)
                    for (int f = 0; f < m; ++f)
                        sec += rt[((static_cast<size_t>(c) * m + dd2) * m + e) * m + f] * x[c] *
                               y[dd2] * y[e] * x[f];
        std::fill(pxy.begin(), pxy.end(), Cd(0, 0));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                double w = x[i] * y[j] - x[j] * y[i];
                if (w == 0.0) continue;
                const auto& slot = pr_d[holctx::pair_index(m, i, j)];
                for (size_t rr = 0; rr < d; ++rr)
                    for (size_t cc = 0; cc < d; ++cc) pxy[rr * d + cc] += w * slot[rr][cc];
            }
        double factor = pref * (sec - to_double(lambda));
        for (size_t rr = 0; rr < d; ++rr)
            for (size_t cc = 0; cc < d; ++cc) {
                Cd acc(0, 0);
                for (size_t k = 0; k < d; ++k) acc += pxy[rr * d + k] * pxy[k * d + cc];
                val[rr * d + cc] = factor * acc;
            }
        double inv = 1.0 / static_cast<double>(s + 1);
        for (size_t rr = 0; rr < d; ++rr)
            for (size_t cc = 0; cc < d; ++cc) {
                Cd v = val[rr * d + cc];
                double dre = v.real() - mean_re[rr][cc];
                double dim_ = v.imag() - mean_im[rr][cc];
                mean_re[rr][cc] += dre * inv;
                mean_im[rr][cc] += dim_ * inv;
                m2[rr][cc] += std::norm(v - Cd(mean_re[rr][cc], mean_im[rr][cc]));
            }
    }
    double worst = 0.0;
    for (size_t rr = 0; rr < d; ++rr)
        for (size_t cc = 0; cc < d; ++cc) {
            double var = m2[rr][cc] / (static_cast<double>(samples) - 1);
            double stderr_ = std::sqrt(var / static_cast<double>(samples)) + 1e-12;
            double dev = std::abs(Cd(mean_re[rr][cc], mean_im[rr][cc]) - rhs_d[rr][cc]);
            worst = std::max(worst, dev / stderr_);
        }
    report.max_sigma = worst;
    report.passed = worst <= 5.0;
    report.note = report.passed ? "monte carlo agreement within 5 sigma"
                                : "monte carlo deviation above 5 sigma";
    return report;
}

}  // namespace weitz::matmodel
