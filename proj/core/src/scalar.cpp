#include "weitz/scalar.hpp"

#include <cmath>
#include <sstream>

namespace weitz {

Scalar Scalar::sqrt_rational(const Rat& q) {
    if (sgn(q) == 0) return Scalar();
    auto [root, s] = squarefree_split(q);
    Scalar r;
    switch (s) {
        case 1: r = Scalar(Rat(1)); break;
        case 2: r = r2(); break;
        case 3: r = r3(); break;
        case 6: r = r6(); break;
        default:
            throw structural_error("sqrt of rational with squarefree part " + std::to_string(s) +
                                   " is outside Q(i,r2,r3)");
    }
    return Scalar(root) * r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw input_error("division by zero scalar");
    // Norm tower down to Q: multiply by Galois conjugates.
    Scalar zi = conj_i();
    Scalar n1 = *this * zi;            // fixed by i -> -i
    Scalar n1c = n1.conj_r2();
    Scalar n2 = n1 * n1c;              // fixed by r2 -> -r2 as well
    Scalar n2c = n2.conj_r3();
    Scalar n3 = n2 * n2c;              // rational
    if (!n3.is_rational()) throw internal_error("scalar norm tower failed");
    Rat n = n3.rational_part();
    if (sgn(n) == 0) throw internal_error("zero norm for nonzero scalar");
    Scalar inv = zi * n1c * n2c;
    Rat r = 1 / n;
    Scalar out;
    for (int k = 0; k < 8; ++k) out.comp(k) = inv.comp(k) * r;
    return out;
}

double Scalar::to_double_real() const {
    static const double R2 = std::sqrt(2.0), R3 = std::sqrt(3.0);
    return to_double(c_[0]) + to_double(c_[2]) * R2 + to_double(c_[4]) * R3 +
           to_double(c_[6]) * R2 * R3;
}

double Scalar::to_double_imag() const {
    static const double R2 = std::sqrt(2.0), R3 = std::sqrt(3.0);
    return to_double(c_[1]) + to_double(c_[3]) * R2 + to_double(c_[5]) * R3 +
           to_double(c_[7]) * R2 * R3;
}

namespace {
const char* kSuffix[8] = {"", "*i", "*r2", "*i*r2", "*r3", "*i*r3", "*r6", "*i*r6"};
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < 8; ++k) {
        if (sgn(c_[k]) == 0) continue;
        if (!first && sgn(c_[k]) > 0) os << "+";
        os << c_[k].get_str() << kSuffix[k];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Scalar Scalar::from_string(const std::string& s) {
    Scalar out;
    if (s.empty()) throw input_error("empty scalar literal");
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = pos + 1;
        while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
        std::string term = s.substr(pos, next - pos);
        if (term == "+" || term == "-") throw input_error("bad scalar literal: " + s);
        int k = 0;
        auto strip = [&term](const std::string& suf) {
            if (term.size() >= suf.size() &&
                term.compare(term.size() - suf.size(), suf.size(), suf) == 0) {
                term.resize(term.size() - suf.size());
                return true;
            }
            return false;
        };
        if (strip("*r2")) k |= 2;
        else if (strip("*r3")) k |= 4;
        else if (strip("*r6")) k |= 6;
        if (strip("*i")) k |= 1;
        if (!term.empty() && term[0] == '+') term.erase(0, 1);
        if (term.empty()) term = "1";
        if (term == "-") term = "-1";
        out.c_[k] += rat_from_string(term);
        pos = next;
    }
    return out;
}

}  // namespace weitz
