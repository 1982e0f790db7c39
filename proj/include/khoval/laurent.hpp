#pragma once

#include "khoval/numeric.hpp"

#include <map>
#include <optional>
#include <string>

namespace khoval {

// The variable a Laurent polynomial is written in. Exponents of `sqrt_t`
// count powers of t^(1/2), so an even exponent 2k denotes t^k.
enum class PolyVar { q, sqrt_t, A };

const char* poly_var_name(PolyVar v);

class Laurent {
public:
    Laurent() = default;
    explicit Laurent(PolyVar v) : var_(v) {}

    static Laurent monomial(PolyVar v, const Rational& coeff, int exp) {
        Laurent p(v);
        p.add_term(exp, coeff);
        return p;
    }

    PolyVar var() const { return var_; }
    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_exp() const { return terms_.begin()->first; }
    int max_exp() const { return terms_.rbegin()->first; }
    Rational coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int exp, const Rational& c);

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    bool operator==(const Laurent& o) const { return var_ == o.var_ && terms_ == o.terms_; }

    // Exact Laurent division; nullopt when the remainder is nonzero.
    std::optional<Laurent> divided_exactly_by(const Laurent& divisor) const;

    // Substitute the variable by minus a new variable (q = -t^(1/2) and its
    // inverse t^(1/2) = -q are both of this shape).
    Laurent substituted_negated(PolyVar new_var) const;

    std::string to_string() const;

private:
    PolyVar var_ = PolyVar::q;
    std::map<int, Rational> terms_; // exponent -> nonzero coefficient
};

} // namespace khoval
