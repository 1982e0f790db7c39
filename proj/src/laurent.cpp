#include "khoval/laurent.hpp"

#include "khoval/errors.hpp"

#include <sstream>

namespace khoval {

const char* poly_var_name(PolyVar v) {
    switch (v) {
        case PolyVar::q: return "q";
        case PolyVar::sqrt_t: return "sqrt_t";
        case PolyVar::A: return "A";
    }
    return "?";
}

void Laurent::add_term(int exp, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (var_ != o.var_) fail(errc::internal, "polynomial variable mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    if (var_ != o.var_) fail(errc::internal, "polynomial variable mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    if (var_ != o.var_) fail(errc::internal, "polynomial variable mismatch");
    Laurent r(var_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

std::optional<Laurent> Laurent::divided_exactly_by(const Laurent& divisor) const {
    if (var_ != divisor.var_ || divisor.is_zero())
        fail(errc::internal, "invalid Laurent division");
    Laurent quotient(var_);
    Laurent rem = *this;
    const int dtop = divisor.max_exp();
    const Rational& dlead = divisor.terms().rbegin()->second;
    while (!rem.is_zero() && rem.max_exp() - rem.min_exp() >= dtop - divisor.min_exp()) {
        int e = rem.max_exp() - dtop;
        Rational c = rem.terms().rbegin()->second / dlead;
        Laurent m = monomial(var_, c, e);
        quotient += m;
        rem -= m * divisor;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quotient;
}

Laurent Laurent::substituted_negated(PolyVar new_var) const {
    Laurent r(new_var);
    for (const auto& [e, c] : terms_) r.add_term(e, (e % 2 == 0) ? c : -c);
    return r;
}

std::string Laurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest power first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << '-';
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string var;
        if (e != 0) {
            if (var_ == PolyVar::sqrt_t) {
                if (e == 2) var = "t";
                else if (e % 2 == 0) var = "t^" + std::to_string(e / 2);
                else var = "t^(" + std::to_string(e) + "/2)";
            } else {
                var = poly_var_name(var_);
                if (e != 1) var += "^" + std::to_string(e);
            }
        }
        if (var.empty()) os << rational_to_string(mag);
        else if (mag == 1) os << var;
        else os << rational_to_string(mag) << "*" << var;
    }
    return os.str();
}

} // namespace khoval
