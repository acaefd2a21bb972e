#include "weitz/liealg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "weitz/errors.hpp"

namespace weitz::liealg {

namespace {

using Coords = std::vector<Rat>;

Rat dot(const Coords& a, const Coords& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Coords add(const Coords& a, const Coords& b) {
    Coords r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Coords sub(const Coords& a, const Coords& b) {
    Coords r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Coords neg(const Coords& a) {
    Coords r = a;
    for (auto& x : r) x = -x;
    return r;
}

void axpy(Coords& a, const Rat& c, const Coords& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

/// 2<x, alpha>/<alpha, alpha>
Rat pairing(const Coords& x, const Coords& alpha) {
    return 2 * dot(x, alpha) / dot(alpha, alpha);
}

std::vector<Coords> simple_roots_for(const Factor& f) {
    std::vector<Coords> roots;
    int n = f.rank;
    auto unit = [](int dim, int k) {
        Coords c(dim, Rat(0));
        c[k] = 1;
        return c;
    };
    switch (f.family) {
        case Family::A:
            for (int i = 0; i < n; ++i) roots.push_back(sub(unit(n + 1, i), unit(n + 1, i + 1)));
            break;
        case Family::B:
            for (int i = 0; i + 1 < n; ++i) roots.push_back(sub(unit(n, i), unit(n, i + 1)));
            roots.push_back(unit(n, n - 1));
            break;
        case Family::C:
            for (int i = 0; i + 1 < n; ++i) roots.push_back(sub(unit(n, i), unit(n, i + 1)));
            {
                Coords last = unit(n, n - 1);
                last[n - 1] = 2;
                roots.push_back(last);
            }
            break;
        case Family::D:
            for (int i = 0; i + 1 < n; ++i) roots.push_back(sub(unit(n, i), unit(n, i + 1)));
            roots.push_back(add(unit(n, n - 2), unit(n, n - 1)));
            break;
        case Family::G2: {
            // alpha1 short, alpha2 long; normalized so that dim V[1,0] = 7.
            Coords a1 = {Rat(1), Rat(-1), Rat(0)};
            Coords a2 = {Rat(-2), Rat(1), Rat(1)};
            roots = {a1, a2};
            break;
        }
    }
    return roots;
}

size_t expected_positive_count(const Factor& f) {
    int n = f.rank;
    switch (f.family) {
        case Family::A: return static_cast<size_t>(n) * (n + 1) / 2;
        case Family::B:
        case Family::C: return static_cast<size_t>(n) * n;
        case Family::D: return static_cast<size_t>(n) * (n - 1);
        case Family::G2: return 6;
    }
    return 0;
}

std::vector<Coords> close_positive_roots(const std::vector<Coords>& simple) {
    std::set<Coords> pos(simple.begin(), simple.end());
    auto is_root = [&pos](const Coords& x) {
        return pos.count(x) > 0 || pos.count(neg(x)) > 0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Coords> snapshot(pos.begin(), pos.end());
        for (const auto& r : snapshot) {
            for (const auto& a : simple) {
                // p = length of the alpha-string below r
                long p = 0;
                Coords t = sub(r, a);
                while (std::any_of(t.begin(), t.end(), [](const Rat& x) { return sgn(x) != 0; }) &&
                       is_root(t)) {
                    ++p;
                    t = sub(t, a);
                }
                Rat q = p - pairing(r, a);
                if (q >= 1) {
                    Coords up = add(r, a);
                    if (pos.insert(up).second) changed = true;
                }
            }
        }
    }
    return {pos.begin(), pos.end()};
}

struct DominantResult {
    Coords coords;
    int sign = 1;
    bool singular = false;
};

DominantResult to_dominant(Coords x, const RootSystem& rs, bool track_singular) {
    DominantResult out;
    bool again = true;
    while (again) {
        again = false;
        for (const auto& a : rs.simple_roots) {
            Rat c = pairing(x, a);
            if (track_singular && sgn(c) == 0) {
                out.singular = true;
                out.coords = x;
                return out;
            }
            if (sgn(c) < 0) {
                axpy(x, -c, a);
                out.sign = -out.sign;
                again = true;
            }
        }
    }
    out.coords = std::move(x);
    return out;
}

long to_long_checked(const Rat& q, const char* what) {
    if (q.get_den() != 1) throw internal_error(std::string(what) + ": not an integer");
    if (!q.get_num().fits_slong_p()) throw internal_error(std::string(what) + ": overflow");
    return q.get_num().get_si();
}

std::string family_letter(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::G2: return "G2";
    }
    return "?";
}

/// Dominant weights of V(lambda) with Freudenthal multiplicities, one factor.
std::map<Coords, mpz_class> dominant_multiplicities(const RootSystem& rs, const Coords& lambda) {
    // Bounding box: lambda - w0(lambda) expanded in simple roots.
    Coords dual = to_dominant(neg(lambda), rs, false).coords;
    Coords theta = add(lambda, dual);
    size_t n = rs.simple_roots.size();
    // Solve theta = sum k_i alpha_i via the Gram matrix of simple roots.
    MatQ gram(n, n), rhs(n, 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) gram(i, j) = dot(rs.simple_roots[i], rs.simple_roots[j]);
        rhs(i, 0) = dot(rs.simple_roots[i], theta);
    }
    MatQ kv = solve(gram, rhs);
    std::vector<long> kmax(n);
    for (size_t i = 0; i < n; ++i) {
        Rat k = kv(i, 0);
        if (sgn(k) < 0) throw internal_error("freudenthal: negative box bound");
        kmax[i] = static_cast<long>(mpz_class(k.get_num() / k.get_den()).get_si());
    }
    // Enumerate the box, keep dominant weights; record height for ordering.
    std::map<Coords, long> height;  // dominant coords -> height
    std::vector<long> k(n, 0);
    while (true) {
        Coords mu = lambda;
        long h = 0;
        for (size_t i = 0; i < n; ++i) {
            axpy(mu, Rat(-k[i]), rs.simple_roots[i]);
            h += k[i];
        }
        bool dominant = true;
        for (const auto& a : rs.simple_roots)
            if (sgn(pairing(mu, a)) < 0) {
                dominant = false;
                break;
            }
        if (dominant) height[mu] = h;
        size_t pos = 0;
        while (pos < n && k[pos] == kmax[pos]) k[pos++] = 0;
        if (pos == n) break;
        ++k[pos];
    }
    // Order by height ascending and run Freudenthal's recursion.
    std::vector<std::pair<long, Coords>> order;
    order.reserve(height.size());
    for (const auto& [mu, h] : height) order.emplace_back(h, mu);
    std::sort(order.begin(), order.end());

    std::map<Coords, mpz_class> mult;
    Coords lam_rho = add(lambda, rs.rho);
    Rat lam_norm = dot(lam_rho, lam_rho);
    for (const auto& [h, mu] : order) {
        if (h == 0) {
            mult[mu] = 1;
            continue;
        }
        Rat num = 0;
        for (const auto& a : rs.positive_roots) {
            Coords nu = add(mu, a);
            while (true) {
                Coords dom = to_dominant(nu, rs, false).coords;
                auto it = mult.find(dom);
                if (it == mult.end()) break;
                num += 2 * Rat(it->second) * dot(nu, a);
                nu = add(nu, a);
            }
        }
        Coords mu_rho = add(mu, rs.rho);
        Rat den = lam_norm - dot(mu_rho, mu_rho);
        if (sgn(den) <= 0) throw internal_error("freudenthal: nonpositive denominator");
        Rat m = num / den;
        if (m.get_den() != 1) throw internal_error("freudenthal: non-integer multiplicity");
        if (sgn(m) > 0) mult[mu] = mpz_class(m.get_num());
    }
    return mult;
}

std::vector<Coords> weyl_orbit(const RootSystem& rs, const Coords& x) {
    std::set<Coords> seen{x};
    std::vector<Coords> queue{x};
    while (!queue.empty()) {
        Coords c = queue.back();
        queue.pop_back();
        for (const auto& a : rs.simple_roots) {
            Rat p = pairing(c, a);
            if (sgn(p) == 0) continue;
            Coords refl = c;
            axpy(refl, -p, a);
            if (seen.insert(refl).second) queue.push_back(refl);
        }
    }
    return {seen.begin(), seen.end()};
}

/// Full weight system of one factor in coordinate form.
std::map<Coords, mpz_class> factor_weights(const RootSystem& rs, const Coords& lambda) {
    std::map<Coords, mpz_class> out;
    for (const auto& [mu, m] : dominant_multiplicities(rs, lambda))
        for (const auto& w : weyl_orbit(rs, mu)) out[w] = m;
    return out;
}

mpz_class factor_weyl_dim(const RootSystem& rs, const Coords& lambda) {
    Rat d(1);
    Coords lr = add(lambda, rs.rho);
    for (const auto& a : rs.positive_roots) d *= dot(lr, a) / dot(rs.rho, a);
    if (d.get_den() != 1) throw internal_error("weyl_dim: non-integer result");
    return mpz_class(d.get_num());
}

/// Klimyk for a single factor; weights in coordinate form, result as
/// fundamental-coordinate map.
std::map<std::vector<long>, long> factor_klimyk(const RootSystem& rs, const Coords& l1,
                                                const Coords& l2) {
    const Coords* big = &l1;
    const Coords* small = &l2;
    if (factor_weyl_dim(rs, l1) < factor_weyl_dim(rs, l2)) std::swap(big, small);
    std::map<std::vector<long>, long> acc;
    for (const auto& [nu, m] : factor_weights(rs, *small)) {
        Coords xi = add(add(*big, nu), rs.rho);
        DominantResult d = to_dominant(xi, rs, true);
        if (d.singular) continue;
        std::vector<long> fund = rs.coords_to_fund(sub(d.coords, rs.rho));
        acc[fund] += d.sign * static_cast<long>(m.get_si());
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second == 0)
            it = acc.erase(it);
        else if (it->second < 0)
            throw internal_error("klimyk: negative multiplicity");
        else
            ++it;
    }
    return acc;
}

std::mutex cache_mutex;

}  // namespace

const RootSystem& root_system(const Factor& f) {
    static std::map<std::pair<int, int>, RootSystem> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(static_cast<int>(f.family), f.rank);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    RootSystem rs;
    rs.factor = f;
    rs.simple_roots = simple_roots_for(f);
    rs.coord_dim = static_cast<int>(rs.simple_roots[0].size());
    rs.positive_roots = close_positive_roots(rs.simple_roots);
    if (rs.positive_roots.size() != expected_positive_count(f))
        throw internal_error("root closure produced wrong count for " + family_letter(f.family) +
                             std::to_string(f.rank));
    rs.rho.assign(rs.coord_dim, Rat(0));
    for (const auto& a : rs.positive_roots) axpy(rs.rho, Rat(1, 2), a);

    size_t n = rs.simple_roots.size();
    rs.cartan = MatQ(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) rs.cartan(i, j) = pairing(rs.simple_roots[i], rs.simple_roots[j]);
    // fundamental weights: omega_i = sum_k (CM^-1)(i,k) alpha_k
    MatQ cinv = inverse(rs.cartan);
    rs.fundamental_weights.assign(n, Coords(rs.coord_dim, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) axpy(rs.fundamental_weights[i], cinv(i, k), rs.simple_roots[k]);
    return cache.emplace(key, std::move(rs)).first->second;
}

std::vector<Rat> RootSystem::weight_coords(const std::vector<long>& fund) const {
    Coords c(coord_dim, Rat(0));
    for (size_t i = 0; i < fund.size(); ++i) axpy(c, Rat(fund[i]), fundamental_weights[i]);
    return c;
}

std::vector<long> RootSystem::coords_to_fund(const std::vector<Rat>& coords) const {
    std::vector<long> out(simple_roots.size());
    for (size_t j = 0; j < simple_roots.size(); ++j)
        out[j] = to_long_checked(pairing(coords, simple_roots[j]), "coords_to_fund");
    return out;
}

int LieAlgebraSpec::total_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
}

std::vector<long> LieAlgebraSpec::factor_block(const HighestWeight& hw, size_t f) const {
    size_t off = 0;
    for (size_t i = 0; i < f; ++i) off += factors[i].rank;
    return {hw.coords.begin() + off, hw.coords.begin() + off + factors[f].rank};
}

std::string LieAlgebraSpec::name() const {
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "x";
        os << family_letter(factors[i].family);
        if (factors[i].family != Family::G2) os << factors[i].rank;
    }
    return os.str();
}

LieAlgebraSpec LieAlgebraSpec::make(std::vector<Factor> factors) {
    if (factors.empty()) throw input_error("spec needs at least one factor");
    for (auto& f : factors) {
        if (f.family == Family::G2) {
            f.rank = 2;
        } else if (f.rank < 1 || (f.family == Family::D && f.rank < 2)) {
            throw input_error("invalid rank for family " + family_letter(f.family));
        }
        // Cartan matrix sanity: diagonal 2, off-diagonal <= 0.
        const RootSystem& rs = root_system(f);
        for (size_t i = 0; i < rs.simple_roots.size(); ++i)
            for (size_t j = 0; j < rs.simple_roots.size(); ++j) {
                if (i == j && rs.cartan(i, j) != 2)
                    throw internal_error("cartan diagonal != 2");
                if (i != j && sgn(rs.cartan(i, j)) > 0)
                    throw internal_error("cartan off-diagonal > 0");
            }
    }
    LieAlgebraSpec spec;
    spec.factors = std::move(factors);
    spec.fundamental_weight_order.resize(spec.total_rank());
    for (size_t i = 0; i < spec.fundamental_weight_order.size(); ++i)
        spec.fundamental_weight_order[i] = static_cast<int>(i);
    // G2 labeling convention: [1,0] is the 7-dimensional representation.
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        if (spec.factors[f].family != Family::G2) continue;
        const RootSystem& rs = root_system(spec.factors[f]);
        if (factor_weyl_dim(rs, rs.weight_coords({1, 0})) != 7 ||
            factor_weyl_dim(rs, rs.weight_coords({0, 1})) != 14)
            throw internal_error("G2 labeling convention violated");
    }
    return spec;
}

LieAlgebraSpec LieAlgebraSpec::parse(const std::string& name) {
    std::vector<Factor> factors;
    size_t pos = 0;
    while (pos < name.size()) {
        size_t next = name.find('x', pos);
        std::string tok = name.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok == "G2" || tok == "g2") {
            factors.push_back({Family::G2, 2});
        } else if (tok.size() >= 2) {
            Family fam;
            switch (tok[0]) {
                case 'A': case 'a': fam = Family::A; break;
                case 'B': case 'b': fam = Family::B; break;
                case 'C': case 'c': fam = Family::C; break;
                case 'D': case 'd': fam = Family::D; break;
                default: throw input_error("unknown algebra family in: " + name);
            }
            factors.push_back({fam, std::stoi(tok.substr(1))});
        } else {
            throw input_error("cannot parse algebra name: " + name);
        }
        pos = next == std::string::npos ? name.size() : next + 1;
    }
    return make(std::move(factors));
}

void validate_weight(const LieAlgebraSpec& spec, const HighestWeight& hw) {
    if (static_cast<int>(hw.coords.size()) != spec.total_rank())
        throw input_error("weight length mismatch: got " + std::to_string(hw.coords.size()) +
                          ", expected " + std::to_string(spec.total_rank()));
    for (long c : hw.coords)
        if (c < 0) throw input_error("weight has a negative entry");
}

mpz_class weyl_dim(const LieAlgebraSpec& spec, const HighestWeight& hw) {
    validate_weight(spec, hw);
    mpz_class d = 1;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        const RootSystem& rs = root_system(spec.factors[f]);
        d *= factor_weyl_dim(rs, rs.weight_coords(spec.factor_block(hw, f)));
    }
    return d;
}

Rat casimir_form_factor(const LieAlgebraSpec& spec, size_t f, const HighestWeight& hw) {
    validate_weight(spec, hw);
    const RootSystem& rs = root_system(spec.factors[f]);
    Coords lam = rs.weight_coords(spec.factor_block(hw, f));
    Coords shifted = lam;
    axpy(shifted, Rat(2), rs.rho);
    return dot(lam, shifted);
}

Rat casimir_l2(const LieAlgebraSpec& spec, const HighestWeight& hw,
               const std::vector<Rat>& factor_scales) {
    if (factor_scales.size() != spec.factors.size())
        throw input_error("casimir_l2: one scale per factor required");
    Rat total = 0;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        if (sgn(factor_scales[f]) <= 0) throw input_error("casimir_l2: nonpositive scale");
        total += factor_scales[f] * casimir_form_factor(spec, f, hw);
    }
    return total;
}

Rat casimir_l2(const LieAlgebraSpec& spec, const HighestWeight& hw, const Rat& scale) {
    return casimir_l2(spec, hw, std::vector<Rat>(spec.factors.size(), scale));
}

Decomposition tensor_decompose(const LieAlgebraSpec& spec, const HighestWeight& hw1,
                               const HighestWeight& hw2) {
    validate_weight(spec, hw1);
    validate_weight(spec, hw2);
    // Componentwise Klimyk, then the product over factors.
    std::vector<std::map<std::vector<long>, long>> parts;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        const RootSystem& rs = root_system(spec.factors[f]);
        parts.push_back(factor_klimyk(rs, rs.weight_coords(spec.factor_block(hw1, f)),
                                      rs.weight_coords(spec.factor_block(hw2, f))));
    }
    std::map<std::vector<long>, long> acc{{{}, 1}};
    for (const auto& part : parts) {
        std::map<std::vector<long>, long> next;
        for (const auto& [prefix, m1] : acc)
            for (const auto& [blk, m2] : part) {
                std::vector<long> w = prefix;
                w.insert(w.end(), blk.begin(), blk.end());
                next[w] += m1 * m2;
            }
        acc = std::move(next);
    }
    Decomposition out;
    for (auto& [w, m] : acc) out.summands.push_back({HighestWeight{w}, m});
    // Dimension bookkeeping must balance exactly.
    mpz_class want = weyl_dim(spec, hw1) * weyl_dim(spec, hw2);
    if (total_dimension(spec, out) != want)
        throw internal_error("tensor_decompose: dimension bookkeeping failed");
    return out;
}

HighestWeight dual_hw(const LieAlgebraSpec& spec, const HighestWeight& hw) {
    validate_weight(spec, hw);
    HighestWeight out;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        const RootSystem& rs = root_system(spec.factors[f]);
        Coords lam = rs.weight_coords(spec.factor_block(hw, f));
        DominantResult d = to_dominant(neg(lam), rs, false);
        for (long c : rs.coords_to_fund(d.coords)) out.coords.push_back(c);
    }
    return out;
}

std::map<std::vector<long>, long> weight_system(const LieAlgebraSpec& spec,
                                                const HighestWeight& hw) {
    validate_weight(spec, hw);
    std::vector<std::map<std::vector<long>, long>> parts;
    for (size_t f = 0; f < spec.factors.size(); ++f) {
        const RootSystem& rs = root_system(spec.factors[f]);
        std::map<std::vector<long>, long> p;
        for (const auto& [w, m] : factor_weights(rs, rs.weight_coords(spec.factor_block(hw, f))))
            p[rs.coords_to_fund(w)] = static_cast<long>(m.get_si());
        parts.push_back(std::move(p));
    }
    std::map<std::vector<long>, long> acc{{{}, 1}};
    for (const auto& part : parts) {
        std::map<std::vector<long>, long> next;
        for (const auto& [prefix, m1] : acc)
            for (const auto& [blk, m2] : part) {
                std::vector<long> w = prefix;
                w.insert(w.end(), blk.begin(), blk.end());
                next[w] += m1 * m2;
            }
        acc = std::move(next);
    }
    return acc;
}

Decomposition decompose_by_weights(const LieAlgebraSpec& spec,
                                   std::map<std::vector<long>, long> weights) {
    for (auto it = weights.begin(); it != weights.end();)
        it = (it->second == 0) ? weights.erase(it) : std::next(it);

    auto is_dominant = [](const std::vector<long>& w) {
        return std::all_of(w.begin(), w.end(), [](long c) { return c >= 0; });
    };
    // nu >= mu in the dominance order iff nu - mu expands with nonnegative
    // coefficients over the simple roots, factor by factor.
    auto dominates = [&spec](const std::vector<long>& nu, const std::vector<long>& mu) {
        size_t off = 0;
        for (const auto& fac : spec.factors) {
            const RootSystem& rs = root_system(fac);
            size_t n = rs.simple_roots.size();
            std::vector<long> dn(nu.begin() + off, nu.begin() + off + n);
            std::vector<long> dm(mu.begin() + off, mu.begin() + off + n);
            Coords diff = sub(rs.weight_coords(dn), rs.weight_coords(dm));
            MatQ gram(n, n), rhs(n, 1);
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j)
                    gram(i, j) = dot(rs.simple_roots[i], rs.simple_roots[j]);
                rhs(i, 0) = dot(rs.simple_roots[i], diff);
            }
            MatQ c = solve(gram, rhs);
            for (size_t i = 0; i < n; ++i)
                if (sgn(c(i, 0)) < 0) return false;
            off += n;
        }
        return true;
    };

    Decomposition out;
    while (!weights.empty()) {
        // Find a dominance-maximal dominant weight with positive multiplicity.
        const std::vector<long>* top = nullptr;
        for (const auto& [w, m] : weights) {
            if (!is_dominant(w)) continue;
            if (m < 0) throw input_error("decompose_by_weights: negative multiplicity during strip");
            bool maximal = true;
            for (const auto& [v, mv] : weights) {
                if (mv <= 0 || v == w || !is_dominant(v)) continue;
                if (dominates(v, w)) {
                    maximal = false;
                    break;
                }
            }
            if (maximal && m > 0) {
                top = &w;
                break;
            }
        }
        if (!top) throw input_error("decompose_by_weights: multiset is not a character");
        HighestWeight hw{*top};
        long mult = weights[*top];
        for (const auto& [w, m] : weight_system(spec, hw)) {
            auto it = weights.find(w);
            if (it == weights.end() || it->second < mult * m)
                throw input_error("decompose_by_weights: multiset is not a character");
            it->second -= mult * m;
            if (it->second == 0) weights.erase(it);
        }
        out.summands.push_back({hw, mult});
    }
    std::sort(out.summands.begin(), out.summands.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

long tensor_multiplicity(const LieAlgebraSpec& spec, const HighestWeight& hw1,
                         const HighestWeight& hw2, const HighestWeight& hw) {
    for (const auto& [w, m] : tensor_decompose(spec, hw1, hw2).summands)
        if (w == hw) return m;
    return 0;
}

mpz_class total_dimension(const LieAlgebraSpec& spec, const Decomposition& d) {
    mpz_class t = 0;
    for (const auto& [w, m] : d.summands) t += m * weyl_dim(spec, w);
    return t;
}

std::map<std::vector<long>, long> weight_multiset_product(
    const std::map<std::vector<long>, long>& a, const std::map<std::vector<long>, long>& b) {
    std::map<std::vector<long>, long> out;
    for (const auto& [wa, ma] : a)
        for (const auto& [wb, mb] : b) {
            std::vector<long> s(wa.size());
            for (size_t i = 0; i < s.size(); ++i) s[i] = wa[i] + wb[i];
            out[s] += ma * mb;
        }
    return out;
}

}  // namespace weitz::liealg
