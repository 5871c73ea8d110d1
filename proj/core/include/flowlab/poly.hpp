#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "flowlab/errors.hpp"
#include "flowlab/rational.hpp"

namespace flowlab {

/// Variables of the certification polynomials.
enum class Var : int { Alpha = 0, Kappa1 = 1, Kappa2 = 2 };

/// Sparse multivariate polynomial over the rationals in (alpha, kappa1,
/// kappa2).  Canonical form: monomials keyed by exponent triple in
/// lexicographic order, no zero coefficients stored.
class RationalPoly {
public:
    using Key = std::array<int, 3>;

    RationalPoly() = default;
    explicit RationalPoly(const BigRat& c);
    explicit RationalPoly(long c) : RationalPoly(BigRat(c)) {}
    static RationalPoly variable(Var v);
    static RationalPoly monomial(const BigRat& c, int ea, int e1, int e2);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BigRat constant_value() const;  // requires is_constant()

    int degree(Var v) const;

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly operator-() const;
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    RationalPoly& operator*=(const RationalPoly& o) { return *this = *this * o; }
    RationalPoly scaled(const BigRat& c) const;
    RationalPoly pow(int e) const;

    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

    RationalPoly derivative(Var v) const;

    /// Substitutes an exact rational for one variable.
    RationalPoly substitute(Var v, const BigRat& value) const;

    /// Substitutes another polynomial for one variable.
    RationalPoly substitute(Var v, const RationalPoly& value) const;

    /// a1 -> a2 involution: kappa1 <-> kappa2.
    RationalPoly swap_kappas() const;

    BigRat eval(const BigRat& a, const BigRat& k1, const BigRat& k2) const;
    double eval_double(double a, double k1, double k2) const;

    /// Coefficients as polynomials in the remaining variables, index = power
    /// of v; size = degree(v)+1 (empty for the zero polynomial).
    std::vector<RationalPoly> coefficients(Var v) const;

    /// Exact division; throws if the divisor does not divide this polynomial.
    RationalPoly divide_exact(const RationalPoly& divisor) const;

    std::string str() const;

    const std::map<Key, BigRat>& terms() const { return terms_; }

private:
    std::map<Key, BigRat> terms_;
};

/// Dense univariate polynomial over the rationals (used for the anchored
/// derivative values in kappa2 after clearing denominators).
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRat> coeffs);  // coeffs[i] * x^i
    static UniPoly constant(const BigRat& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const BigRat& leading() const;
    const std::vector<BigRat>& coeffs() const { return c_; }

    BigRat eval(const BigRat& x) const;
    UniPoly derivative() const;

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);

    /// Remainder of this / d (rational arithmetic, exact).
    UniPoly rem(const UniPoly& d) const;

    /// Content-normalized copy (integer primitive, same sign).
    UniPoly primitive() const;

    std::string str() const;

private:
    void trim();
    std::vector<BigRat> c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly squarefree_part(const UniPoly& p);

/// Upper bound B with all real roots of p inside (-B, B).
BigRat cauchy_root_bound(const UniPoly& p);

/// Interval over the rationals; lo/hi may be infinite.
struct RatInterval {
    BigRat lo, hi;
    bool lo_infinite = false;
    bool hi_infinite = false;
    static RatInterval closed(const BigRat& lo, const BigRat& hi) { return {lo, hi, false, false}; }
    static RatInterval ray(const BigRat& lo) { return {lo, 0, false, true}; }
    std::string str() const;
};

class SturmSequence {
public:
    explicit SturmSequence(const UniPoly& squarefree);
    int variations_at(const BigRat& x) const;
    int variations_at_pos_inf() const;
    /// Number of distinct roots in (lo, hi].
    int roots_in(const BigRat& lo, const BigRat& hi) const;
    /// Number of distinct roots in (lo, +inf).
    int roots_above(const BigRat& lo) const;

private:
    std::vector<UniPoly> seq_;
};

/// Isolating intervals (lo, hi] for the distinct real roots of p inside the
/// interval (open at finite endpoints handled by the caller's sampling).
std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& where);

/// Result of a sign-consistency check with the evidence used.
struct SignCheck {
    bool nonpositive = false;
    std::string detail;  // samples and isolated roots, for reports
};

/// Certifies p(x) <= 0 for all x in the interval by exact root isolation
/// and sampling between roots; endpoints included as limits.
SignCheck nonpositive_on(const UniPoly& p, const RatInterval& where);

}  // namespace flowlab
