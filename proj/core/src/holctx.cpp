#include "weitz/holctx.hpp"

#include <algorithm>
#include <set>

#include "weitz/errors.hpp"

namespace weitz::holctx {

namespace {

using liealg::Family;
using liealg::HighestWeight;
using liealg::LieAlgebraSpec;

Rat lambda2_ip(const MatQ& a, const MatQ& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (!is_zero(a(i, j)) && !is_zero(b(i, j))) s += a(i, j) * b(i, j);
    return s / 2;
}

MatQ pair_bivector(int m, int i, int j, const Rat& c = Rat(1)) {
    MatQ b(m, m);
    b(j, i) = c;
    b(i, j) = -c;
    return b;
}

struct RawBasis {
    std::vector<MatQ> hol;
    std::vector<std::vector<size_t>> factor_indices;
};

RawBasis so_basis(int m) {
    RawBasis rb;
    if (m == 4) {
        // chiral bases of the two su(2) ideals (self-dual / anti-self-dual)
        for (int s : {+1, -1}) {
            std::vector<size_t> idx;
            auto push = [&](MatQ mat) {
                idx.push_back(rb.hol.size());
                rb.hol.push_back(std::move(mat));
            };
            push(pair_bivector(4, 0, 1) + pair_bivector(4, 2, 3, Rat(s)));
            push(pair_bivector(4, 0, 2) + pair_bivector(4, 1, 3, Rat(-s)));
            push(pair_bivector(4, 0, 3) + pair_bivector(4, 1, 2, Rat(s)));
            rb.factor_indices.push_back(idx);
        }
        return rb;
    }
    std::vector<size_t> idx;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            idx.push_back(rb.hol.size());
            rb.hol.push_back(pair_bivector(m, i, j));
        }
    rb.factor_indices.push_back(idx);
    return rb;
}

// J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}
MatQ standard_J(int n) {
    MatQ j(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        j(2 * k + 1, 2 * k) = 1;
        j(2 * k, 2 * k + 1) = -1;
    }
    return j;
}

std::vector<MatQ> u_basis(int n) {
    int m = 2 * n;
    std::vector<MatQ> basis;
    for (int k = 0; k < n; ++k) basis.push_back(pair_bivector(m, 2 * k, 2 * k + 1));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            basis.push_back(pair_bivector(m, 2 * k, 2 * l) + pair_bivector(m, 2 * k + 1, 2 * l + 1));
            basis.push_back(pair_bivector(m, 2 * k, 2 * l + 1) - pair_bivector(m, 2 * k + 1, 2 * l));
        }
    return basis;
}

std::vector<MatQ> u_perp_basis(int n) {
    int m = 2 * n;
    std::vector<MatQ> basis;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            basis.push_back(pair_bivector(m, 2 * k, 2 * l) - pair_bivector(m, 2 * k + 1, 2 * l + 1));
            basis.push_back(pair_bivector(m, 2 * k, 2 * l + 1) + pair_bivector(m, 2 * k + 1, 2 * l));
        }
    return basis;
}

std::vector<MatQ> su3_basis() {
    std::vector<MatQ> u = u_basis(3);  // D0, D1, D2, then off-diagonal pairs
    std::vector<MatQ> basis;
    basis.push_back(u[0] - u[1]);
    basis.push_back(u[0] + u[1] - Rat(2) * u[2]);
    for (size_t k = 3; k < u.size(); ++k) basis.push_back(u[k]);
    return basis;
}

// Oriented triples (i, i+1, i+3) mod 7 of the associative 3-form.
const int kG2Triples[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                              {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};

/// phi(a,b,c), totally antisymmetric, +1 on the oriented triples.
int g2_phi(int a, int b, int c) {
    int v[3] = {a, b, c};
    int sign = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (v[i] == v[j]) return 0;
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
        }
    for (const auto& t : kG2Triples) {
        int u[3] = {t[0], t[1], t[2]};
        int s2 = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (u[i] > u[j]) {
                    std::swap(u[i], u[j]);
                    s2 = -s2;
                }
        if (u[0] == v[0] && u[1] == v[1] && u[2] == v[2]) return sign * s2;
    }
    return 0;
}

/// iota_{e_k} phi as a bivector matrix.
MatQ g2_perp_vector(int k) {
    MatQ b(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            int s = g2_phi(k, i, j);
            if (s != 0) b += pair_bivector(7, i, j, Rat(s));
        }
    return b;
}

std::vector<MatQ> g2_basis() {
    // For each k, iota_{e_k} phi = u_1 + u_2 + u_3 over the three lines
    // through k; the annihilator of phi meets their span in sum a_l u_l with
    // sum a_l = 0. The 7 x 2 vectors below are mutually orthogonal.
    std::vector<MatQ> basis;
    for (int k = 0; k < 7; ++k) {
        std::vector<MatQ> u;
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) {
                int s = g2_phi(k, i, j);
                if (s != 0) u.push_back(pair_bivector(7, i, j, Rat(s)));
            }
        if (u.size() != 3) throw internal_error("G2: expected 3 lines through each index");
        basis.push_back(u[0] - u[1]);
        basis.push_back(u[0] + u[1] - Rat(2) * u[2]);
    }
    return basis;
}

/// Induced action of X in so(7) on phi vanishes?
bool annihilates_phi(const MatQ& x) {
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c) {
                Rat s = 0;
                for (int d = 0; d < 7; ++d) {
                    if (!is_zero(x(d, a))) s += x(d, a) * g2_phi(d, b, c);
                    if (!is_zero(x(d, b))) s += x(d, b) * g2_phi(a, d, c);
                    if (!is_zero(x(d, c))) s += x(d, c) * g2_phi(a, b, d);
                }
                if (!is_zero(s)) return false;
            }
    return true;
}

/// Left/right multiplication by a unit quaternion (0=1, 1=i, 2=j, 3=k) as a
/// bivector block; off-diagonal (a<b) gives E_{ab} q - E_{ba} qbar.
MatQ quat_block(int n, int a, int b, int q, bool left) {
    // multiplication table: tbl[p][q] = {sign, comp} for e_p * e_q
    static const int tbl[4][4][2] = {
        {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
        {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
        {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
        {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
    };
    MatQ blk(4, 4);
    for (int src = 0; src < 4; ++src) {
        int sign = left ? tbl[q][src][0] : tbl[src][q][0];
        int comp = left ? tbl[q][src][1] : tbl[src][q][1];
        blk(comp, src) = sign;
    }
    MatQ big(4 * n, 4 * n);
    if (a == b) {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) big(4 * a + r, 4 * a + c) = blk(r, c);
    } else {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                big(4 * a + r, 4 * b + c) = blk(r, c);
                big(4 * b + r, 4 * a + c) = -blk(c, r);  // -L_qbar = -L_q^T
            }
    }
    return big;
}

RawBasis sp1spn_basis(int n) {
    RawBasis rb;
    std::vector<size_t> sp1_idx, spn_idx;
    for (int q = 1; q <= 3; ++q) {  // sp(1): global right multiplications
        MatQ sum(4 * n, 4 * n);
        for (int a = 0; a < n; ++a) sum += quat_block(n, a, a, q, /*left=*/false);
        sp1_idx.push_back(rb.hol.size());
        rb.hol.push_back(sum);
    }
    for (int a = 0; a < n; ++a)
        for (int q = 1; q <= 3; ++q) {
            spn_idx.push_back(rb.hol.size());
            rb.hol.push_back(quat_block(n, a, a, q, /*left=*/true));
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int q = 0; q <= 3; ++q) {
                spn_idx.push_back(rb.hol.size());
                rb.hol.push_back(quat_block(n, a, b, q, /*left=*/true));
            }
    rb.factor_indices = {sp1_idx, spn_idx};
    return rb;
}

std::vector<MatS> clifford_gammas(int m) {
    // gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij over Q(i)
    std::vector<MatS> gam;
    int k = m / 2;
    MatS s1(2, 2), s2(2, 2), s3(2, 2), id2 = MatS::identity(2);
    s1(0, 1) = Scalar(1);
    s1(1, 0) = Scalar(1);
    s2(0, 1) = -Scalar::i();
    s2(1, 0) = Scalar::i();
    s3(0, 0) = Scalar(1);
    s3(1, 1) = Scalar(-1);
    for (int j = 0; j < k; ++j) {
        MatS a = MatS::identity(1), b = MatS::identity(1);
        for (int t = 0; t < j; ++t) {
            a = a.kron(s3);
            b = b.kron(s3);
        }
        a = a.kron(Scalar::i() * s1);
        b = b.kron(Scalar::i() * s2);
        for (int t = j + 1; t < k; ++t) {
            a = a.kron(id2);
            b = b.kron(id2);
        }
        gam.push_back(a);
        gam.push_back(b);
    }
    if (m % 2 == 1) {
        MatS c = MatS::identity(1);
        for (int t = 0; t < k; ++t) c = c.kron(s3);
        gam.push_back(Scalar::i() * c);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            MatS anti = gam[i] * gam[j] + gam[j] * gam[i];
            MatS want(gam[0].rows(), gam[0].cols());
            if (i == j) want = Scalar(-2) * MatS::identity(gam[0].rows());
            if (anti != want) throw internal_error("clifford relation failed");
        }
    return gam;
}

LieAlgebraSpec spec_for(ContextKind kind, int m) {
    switch (kind) {
        case ContextKind::SO:
        case ContextKind::SOSpin:
            if (m == 3) return LieAlgebraSpec::parse("B1");
            if (m == 4) return LieAlgebraSpec::parse("A1xA1");
            if (m % 2 == 1) return LieAlgebraSpec::parse("B" + std::to_string((m - 1) / 2));
            return LieAlgebraSpec::parse("D" + std::to_string(m / 2));
        case ContextKind::U:
            return LieAlgebraSpec::parse("A" + std::to_string(m / 2 - 1));
        case ContextKind::SU3NK:
            return LieAlgebraSpec::parse("A2");
        case ContextKind::G2:
            return LieAlgebraSpec::parse("G2");
        case ContextKind::Sp1Spn:
            return LieAlgebraSpec::parse("C1xC" + std::to_string(m / 4));
    }
    throw input_error("unknown context kind");
}

HighestWeight t_weight_for(ContextKind kind, int m, const LieAlgebraSpec& spec) {
    switch (kind) {
        case ContextKind::SO:
        case ContextKind::SOSpin: {
            if (m == 3) return {{2}};
            if (m == 4) return {{1, 1}};
            std::vector<long> w(spec.total_rank(), 0);
            w[0] = 1;
            return {w};
        }
        case ContextKind::U:
        case ContextKind::SU3NK: {
            std::vector<long> w(spec.total_rank(), 0);
            w[0] = 1;
            return {w};
        }
        case ContextKind::G2:
            return {{1, 0}};
        case ContextKind::Sp1Spn: {
            std::vector<long> w(spec.total_rank(), 0);
            w[0] = 1;
            w[1] = 1;
            return {w};
        }
    }
    throw input_error("unknown context kind");
}

std::map<std::vector<long>, long> t_weights_for(ContextKind kind, const LieAlgebraSpec& spec,
                                                const HighestWeight& tw) {
    auto ws = liealg::weight_system(spec, tw);
    if (kind == ContextKind::SU3NK || kind == ContextKind::U) {
        for (const auto& [w, c] : liealg::weight_system(spec, liealg::dual_hw(spec, tw)))
            ws[w] += c;
    }
    return ws;
}

}  // namespace

std::string kind_name(ContextKind k) {
    switch (k) {
        case ContextKind::SO: return "so";
        case ContextKind::SOSpin: return "so-spin";
        case ContextKind::U: return "u";
        case ContextKind::SU3NK: return "su3-nk";
        case ContextKind::G2: return "g2";
        case ContextKind::Sp1Spn: return "sp1spn";
    }
    return "?";
}

size_t biv_dim(int m) { return static_cast<size_t>(m) * (m - 1) / 2; }

size_t pair_index(int m, int i, int j) {
    if (i >= j || j >= m || i < 0) throw input_error("pair_index: need 0 <= i < j < m");
    return static_cast<size_t>(i) * (2 * m - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> index_pair(int m, size_t k) {
    for (int i = 0; i < m; ++i) {
        size_t row = static_cast<size_t>(m - i - 1);
        if (k < row) return {i, i + 1 + static_cast<int>(k)};
        k -= row;
    }
    throw input_error("index_pair: out of range");
}

MatQ biv_matrix(int m, const std::vector<Rat>& coords) {
    MatQ b(m, m);
    for (size_t k = 0; k < coords.size(); ++k) {
        if (is_zero(coords[k])) continue;
        auto [i, j] = index_pair(m, k);
        b(j, i) += coords[k];
        b(i, j) -= coords[k];
    }
    return b;
}

std::vector<Rat> biv_coords(const MatQ& antisym) {
    int m = static_cast<int>(antisym.rows());
    std::vector<Rat> c(biv_dim(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) c[pair_index(m, i, j)] = antisym(j, i);
    return c;
}

MatrixRep HolonomyContext::tangent_rep() const {
    MatrixRep rep;
    rep.ctx = this;
    rep.dim = m;
    for (const auto& y : hol_raw) rep.action.push_back(to_scalar(y));
    rep.label = "T";
    rep.weights = t_weights;
    return rep;
}

MatQ HolonomyContext::project_matrix(const MatQ& bivector) const {
    MatQ out(m, m);
    for (size_t a = 0; a < hol_raw.size(); ++a) {
        Rat c = lambda2_ip(bivector, hol_raw[a]) / hol_norm[a];
        if (!is_zero(c)) out += c * hol_raw[a];
    }
    return out;
}

std::string HolonomyContext::name() const {
    return kind_name(kind) + "(m=" + std::to_string(m) + ")";
}

std::shared_ptr<const HolonomyContext> build_context(ContextKind kind, int param) {
    auto ctx = std::make_shared<HolonomyContext>();
    ctx->kind = kind;
    RawBasis rb;
    switch (kind) {
        case ContextKind::SO:
        case ContextKind::SOSpin:
            if (param < 3) throw input_error("SO context needs m >= 3");
            ctx->m = param;
            rb = so_basis(param);
            if (kind == ContextKind::SOSpin) {
                if (param > 10) throw input_error("spin-enabled context limited to m <= 10");
                ctx->clifford = clifford_gammas(param);
            }
            break;
        case ContextKind::U:
            if (param < 2) throw input_error("U context needs n >= 2");
            ctx->m = 2 * param;
            rb.hol = u_basis(param);
            rb.factor_indices.emplace_back();
            for (size_t k = 0; k < rb.hol.size(); ++k) rb.factor_indices[0].push_back(k);
            ctx->complex_structure = standard_J(param);
            ctx->perp_raw = u_perp_basis(param);
            break;
        case ContextKind::SU3NK:
            if (param != 6) throw input_error("SU(3) nearly-Kaehler context forces m = 6");
            ctx->m = 6;
            rb.hol = su3_basis();
            rb.factor_indices.emplace_back();
            for (size_t k = 0; k < rb.hol.size(); ++k) rb.factor_indices[0].push_back(k);
            ctx->complex_structure = standard_J(3);
            break;
        case ContextKind::G2:
            if (param != 7) throw input_error("G2 context forces m = 7");
            ctx->m = 7;
            rb.hol = g2_basis();
            rb.factor_indices.emplace_back();
            for (size_t k = 0; k < rb.hol.size(); ++k) rb.factor_indices[0].push_back(k);
            for (int k = 0; k < 7; ++k) ctx->perp_raw.push_back(g2_perp_vector(k));
            break;
        case ContextKind::Sp1Spn:
            if (param < 1) throw input_error("Sp(1)Sp(n) context needs n >= 1");
            ctx->m = 4 * param;
            rb = sp1spn_basis(param);
            break;
    }
    ctx->hol_raw = std::move(rb.hol);
    ctx->factor_indices = std::move(rb.factor_indices);

    const int m = ctx->m;
    for (const auto& y : ctx->hol_raw) {
        if (y.rows() != static_cast<size_t>(m) || !(y.transpose() + y).is_zero())
            throw internal_error("hol basis element is not antisymmetric");
    }
    for (size_t a = 0; a < ctx->hol_raw.size(); ++a) {
        for (size_t b = 0; b < a; ++b)
            if (!is_zero(lambda2_ip(ctx->hol_raw[a], ctx->hol_raw[b])))
                throw internal_error("hol basis not orthogonal");
        ctx->hol_norm.push_back(lambda2_ip(ctx->hol_raw[a], ctx->hol_raw[a]));
    }
    for (size_t a = 0; a < ctx->hol_raw.size(); ++a)
        for (size_t b = a + 1; b < ctx->hol_raw.size(); ++b) {
            MatQ br = commutator(ctx->hol_raw[a], ctx->hol_raw[b]);
            MatQ residual = br;
            for (size_t k = 0; k < ctx->hol_raw.size(); ++k) {
                Rat c = lambda2_ip(br, ctx->hol_raw[k]) / ctx->hol_norm[k];
                if (!is_zero(c)) residual -= c * ctx->hol_raw[k];
            }
            if (!residual.is_zero()) throw internal_error("hol is not closed under brackets");
        }
    if (kind == ContextKind::G2) {
        for (const auto& y : ctx->hol_raw)
            if (!annihilates_phi(y)) throw internal_error("G2 basis does not annihilate phi");
        if (ctx->hol_raw.size() != 14 || ctx->perp_raw.size() != 7)
            throw internal_error("G2 dimensions wrong");
    }

    // Perp basis: complete by kernel + orthogonalization when not explicit.
    if (ctx->perp_raw.empty() && ctx->hol_raw.size() < biv_dim(m)) {
        MatQ rows(ctx->hol_raw.size(), biv_dim(m));
        for (size_t a = 0; a < ctx->hol_raw.size(); ++a) {
            auto co = biv_coords(ctx->hol_raw[a]);
            for (size_t k = 0; k < co.size(); ++k) rows(a, k) = co[k];
        }
        MatQ null = kernel(rows);
        std::vector<Rat> norms;
        MatQ orth = orthogonalize_columns(null, &norms);
        for (size_t c = 0; c < orth.cols(); ++c) {
            std::vector<Rat> co(orth.rows());
            for (size_t k = 0; k < orth.rows(); ++k) co[k] = orth(k, c);
            ctx->perp_raw.push_back(biv_matrix(m, co));
        }
    }
    for (const auto& y : ctx->perp_raw) {
        ctx->perp_norm.push_back(lambda2_ip(y, y));
        for (const auto& h : ctx->hol_raw)
            if (!is_zero(lambda2_ip(y, h))) throw internal_error("perp not orthogonal to hol");
    }
    if (ctx->hol_raw.size() + ctx->perp_raw.size() != biv_dim(m))
        throw internal_error("hol + perp does not fill so(m)");

    for (size_t a = 0; a < ctx->hol_raw.size(); ++a) {
        Scalar inv_norm = Scalar(1) / Scalar::sqrt_rational(ctx->hol_norm[a]);
        ctx->hol_basis.push_back(inv_norm * to_scalar(ctx->hol_raw[a]));
    }
    for (size_t a = 0; a < ctx->perp_raw.size(); ++a) {
        Scalar inv_norm = Scalar(1) / Scalar::sqrt_rational(ctx->perp_norm[a]);
        ctx->perp_basis.push_back(inv_norm * to_scalar(ctx->perp_raw[a]));
    }

    size_t P = biv_dim(m);
    ctx->pr_hol_matrix = MatQ(P, P);
    for (size_t a = 0; a < ctx->hol_raw.size(); ++a) {
        auto co = biv_coords(ctx->hol_raw[a]);
        for (size_t i = 0; i < P; ++i) {
            if (is_zero(co[i])) continue;
            Rat f = co[i] / ctx->hol_norm[a];
            for (size_t j = 0; j < P; ++j)
                if (!is_zero(co[j])) ctx->pr_hol_matrix(i, j) += f * co[j];
        }
    }
    if (!(ctx->pr_hol_matrix * ctx->pr_hol_matrix == ctx->pr_hol_matrix))
        throw internal_error("pr_hol not idempotent");
    if (!(ctx->pr_hol_matrix.transpose() == ctx->pr_hol_matrix))
        throw internal_error("pr_hol not symmetric");

    // Weight-theoretic shadow and embedding-scale calibration on T.
    ctx->spec = spec_for(kind, m);
    ctx->t_weight = t_weight_for(kind, m, ctx->spec);
    ctx->t_weights = t_weights_for(kind, ctx->spec, ctx->t_weight);
    for (size_t f = 0; f < ctx->spec.factors.size(); ++f) {
        MatQ cas(m, m);
        for (size_t a : ctx->factor_indices[f]) {
            MatQ sq = ctx->hol_raw[a] * ctx->hol_raw[a];
            cas -= (1 / ctx->hol_norm[a]) * sq;
        }
        Rat value = cas(0, 0);
        if (!(cas == value * MatQ::identity(m)))
            throw internal_error("factor Casimir is not scalar on T; calibration failed");
        Rat form = liealg::casimir_form_factor(ctx->spec, f, ctx->t_weight);
        if (is_zero(form)) throw internal_error("calibration weight has zero Casimir");
        ctx->factor_scales.push_back(value / form);
    }
    return ctx;
}

std::vector<Scalar> project_to_hol(const HolonomyContext& ctx, const MatQ& bivector) {
    if (bivector.rows() != static_cast<size_t>(ctx.m) ||
        !(bivector.transpose() + bivector).is_zero())
        throw input_error("project_to_hol: need an m x m antisymmetric matrix");
    std::vector<Scalar> out;
    out.reserve(ctx.hol_raw.size());
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a) {
        Rat raw = lambda2_ip(bivector, ctx.hol_raw[a]);
        out.push_back(Scalar(raw) / Scalar::sqrt_rational(ctx.hol_norm[a]));
    }
    return out;
}

MatS casimir_operator(const HolonomyContext& ctx, const std::vector<MatS>& action, int factor) {
    if (action.size() != ctx.hol_raw.size())
        throw input_error("casimir_operator: one action matrix per hol basis element");
    size_t d = action.empty() ? 0 : action[0].rows();
    MatS cas(d, d);
    auto add_factor = [&](size_t f) {
        for (size_t a : ctx.factor_indices[f]) {
            MatS sq = action[a] * action[a];
            Scalar c = Scalar(-1 / ctx.hol_norm[a]);
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j)
                    if (!sq(i, j).is_zero()) cas(i, j) += c * sq(i, j);
        }
    };
    if (factor < 0)
        for (size_t f = 0; f < ctx.factor_indices.size(); ++f) add_factor(f);
    else
        add_factor(static_cast<size_t>(factor));
    return cas;
}

void check_bracket_compatibility(const HolonomyContext& ctx, const MatrixRep& rep) {
    if (rep.action.size() != ctx.hol_raw.size())
        throw structural_error("rep has wrong number of action matrices");
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a)
        for (size_t b = a + 1; b < ctx.hol_raw.size(); ++b) {
            MatQ br = commutator(ctx.hol_raw[a], ctx.hol_raw[b]);
            MatS want(rep.dim, rep.dim);
            for (size_t k = 0; k < ctx.hol_raw.size(); ++k) {
                Rat c = lambda2_ip(br, ctx.hol_raw[k]) / ctx.hol_norm[k];
                if (!is_zero(c)) want += Scalar(c) * rep.action[k];
            }
            if (!(commutator(rep.action[a], rep.action[b]) == want))
                throw structural_error("action violates bracket compatibility at pair (" +
                                       std::to_string(a) + "," + std::to_string(b) + ")");
        }
}

namespace {

struct PredictedComponent {
    HighestWeight label;
    bool merged = false;
    long mult = 0;
    mpz_class dim;
    Rat cas_total;
    std::vector<Rat> cas_factor;
};

std::vector<PredictedComponent> predict_components(
    const HolonomyContext& ctx, const std::map<std::vector<long>, long>& weights,
    bool real_space) {
    auto dec = liealg::decompose_by_weights(ctx.spec, weights);
    std::vector<PredictedComponent> out;
    std::set<std::vector<long>> used;
    for (const auto& [w, mult] : dec.summands) {
        if (used.count(w.coords)) continue;
        PredictedComponent pc;
        pc.label = w;
        pc.mult = mult;
        pc.dim = mult * liealg::weyl_dim(ctx.spec, w);
        used.insert(w.coords);
        if (real_space) {
            HighestWeight dual = liealg::dual_hw(ctx.spec, w);
            if (!(dual == w)) {
                long dual_mult = 0;
                for (const auto& [v, mv] : dec.summands)
                    if (v == dual) dual_mult = mv;
                if (dual_mult != mult)
                    throw internal_error("real space has unequal dual multiplicities");
                pc.merged = true;
                if (dual.coords > pc.label.coords) pc.label = dual;
                pc.dim += mult * liealg::weyl_dim(ctx.spec, dual);
                used.insert(dual.coords);
            }
        }
        pc.cas_total = liealg::casimir_l2(ctx.spec, w, ctx.factor_scales);
        for (size_t f = 0; f < ctx.spec.factors.size(); ++f)
            pc.cas_factor.push_back(ctx.factor_scales[f] *
                                    liealg::casimir_form_factor(ctx.spec, f, w));
        out.push_back(std::move(pc));
    }
    return out;
}

MatS lagrange_projector(const MatS& op, const Rat& mine, const std::vector<Rat>& others,
                        const MatS& within) {
    MatS p = within;
    for (const Rat& ev : others) {
        if (ev == mine) continue;
        MatS shifted = op * p - Scalar(ev) * p;
        p = Scalar(1 / (mine - ev)) * shifted;
    }
    return p;
}

}  // namespace

std::vector<IsotypicComponent> split_isotypic(const HolonomyContext& ctx,
                                              const std::vector<MatS>& action,
                                              const std::map<std::vector<long>, long>& weights) {
    size_t d = action.empty() ? 0 : action[0].rows();
    bool real_space = true;
    for (const auto& a : action) {
        for (size_t i = 0; i < d && real_space; ++i)
            for (size_t j = 0; j < d; ++j)
                if (!a(i, j).is_real()) {
                    real_space = false;
                    break;
                }
        if (!real_space) break;
    }
    auto predicted = predict_components(ctx, weights, real_space);

    MatS cas = casimir_operator(ctx, action);
    std::vector<Rat> all_cas;
    for (const auto& pc : predicted)
        if (std::find(all_cas.begin(), all_cas.end(), pc.cas_total) == all_cas.end())
            all_cas.push_back(pc.cas_total);

    std::vector<IsotypicComponent> out;
    MatS total_check(d, d);
    for (const Rat& ev : all_cas) {
        std::vector<const PredictedComponent*> klass;
        for (const auto& pc : predicted)
            if (pc.cas_total == ev) klass.push_back(&pc);
        MatS proj = lagrange_projector(cas, ev, all_cas, MatS::identity(d));

        struct Block {
            MatS proj;
            std::vector<const PredictedComponent*> members;
        };
        std::vector<Block> blocks;
        blocks.push_back({std::move(proj), std::move(klass)});
        for (size_t f = 0; f < ctx.spec.factors.size(); ++f) {
            bool any_multi = std::any_of(blocks.begin(), blocks.end(),
                                         [](const Block& b) { return b.members.size() > 1; });
            if (!any_multi) break;
            MatS cas_f = casimir_operator(ctx, action, static_cast<int>(f));
            std::vector<Block> next;
            for (auto& blk : blocks) {
                if (blk.members.size() <= 1) {
                    next.push_back(std::move(blk));
                    continue;
                }
                std::vector<Rat> values;
                for (const auto* pc : blk.members)
                    if (std::find(values.begin(), values.end(), pc->cas_factor[f]) == values.end())
                        values.push_back(pc->cas_factor[f]);
                for (const Rat& v : values) {
                    Block nb;
                    nb.proj = lagrange_projector(cas_f, v, values, blk.proj);
                    for (const auto* pc : blk.members)
                        if (pc->cas_factor[f] == v) nb.members.push_back(pc);
                    next.push_back(std::move(nb));
                }
            }
            blocks = std::move(next);
        }
        for (auto& blk : blocks) {
            if (blk.members.size() != 1)
                throw structural_error(
                    "isotypic splitting degenerate: Casimir data cannot separate components");
            const auto* pc = blk.members[0];
            IsotypicComponent comp;
            comp.label = pc->label;
            comp.merged_with_dual = pc->merged;
            comp.projector = std::move(blk.proj);
            comp.multiplicity = pc->mult;
            comp.casimir = pc->cas_total;
            Rat trq = comp.projector.trace().to_rational();
            if (trq.get_den() != 1 || trq != Rat(pc->dim))
                throw internal_error("isotypic projector has wrong trace");
            comp.dim = static_cast<size_t>(trq.get_num().get_si());
            total_check += comp.projector;
            out.push_back(std::move(comp));
        }
    }
    if (!(total_check == MatS::identity(d)))
        throw internal_error("isotypic projectors do not resolve the identity");
    std::sort(out.begin(), out.end(), [](const IsotypicComponent& a, const IsotypicComponent& b) {
        return a.label < b.label;
    });
    return out;
}

std::vector<IsotypicComponent> gradient_targets(const HolonomyContext& ctx, const MatrixRep& rep) {
    if (rep.ctx != &ctx)
        throw structural_error("gradient_targets: representation/context mismatch");
    if (ctx.kind == ContextKind::U)
        throw structural_error("isotypic labeling over u(n) is not supported");
    check_bracket_compatibility(ctx, rep);
    std::vector<MatS> action;
    MatS idV = MatS::identity(rep.dim);
    MatS idT = MatS::identity(ctx.m);
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a)
        action.push_back(to_scalar(ctx.hol_raw[a]).kron(idV) + idT.kron(rep.action[a]));
    auto weights = liealg::weight_multiset_product(ctx.t_weights, rep.weights);
    auto comps = split_isotypic(ctx, action, weights);
    for (const auto& c : comps)
        for (const auto& a : action)
            if (!commutator(a, c.projector).is_zero())
                throw internal_error("isotypic projector fails equivariance");
    return comps;
}

ConformalWeightTable conformal_weights(const HolonomyContext& ctx, const MatrixRep& rep) {
    auto comps = gradient_targets(ctx, rep);
    size_t D = ctx.m * rep.dim;
    MatS B(D, D);
    for (size_t a = 0; a < ctx.hol_raw.size(); ++a) {
        MatS term = to_scalar(ctx.hol_raw[a]).kron(rep.action[a]);
        Scalar c = Scalar(-1 / ctx.hol_norm[a]);
        for (size_t i = 0; i < D; ++i)
            for (size_t j = 0; j < D; ++j)
                if (!term(i, j).is_zero()) B(i, j) += c * term(i, j);
    }
    auto vdec = liealg::decompose_by_weights(ctx.spec, rep.weights);
    Rat cas_v = liealg::casimir_l2(ctx.spec, vdec.summands[0].first, ctx.factor_scales);
    for (const auto& [w, mlt] : vdec.summands)
        if (liealg::casimir_l2(ctx.spec, w, ctx.factor_scales) != cas_v)
            throw structural_error("conformal_weights: representation is not Casimir-isotypic");
    Rat cas_t = liealg::casimir_l2(ctx.spec, ctx.t_weight, ctx.factor_scales);

    ConformalWeightTable table;
    Rat trace_accum = 0;
    for (auto& comp : comps) {
        MatS bp = B * comp.projector;
        Rat b = (bp.trace() / Scalar(Rat(comp.dim))).to_rational();
        if (!(bp == Scalar(b) * comp.projector))
            throw internal_error("conformal weight operator is not scalar on an isotypic component");
        ConformalWeightEntry e;
        e.b = b;
        e.weitzenboeck_coeff = 1 - b;
        e.casimir_formula_ok = (b == (comp.casimir - cas_v - cas_t) / 2);
        trace_accum += b * Rat(comp.dim);
        e.component = std::move(comp);
        table.entries.push_back(std::move(e));
    }
    if (!is_zero(trace_accum)) throw internal_error("conformal weights do not sum to zero trace");
    table.B_matrix = std::move(B);
    return table;
}

}  // namespace weitz::holctx
