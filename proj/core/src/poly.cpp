#include "flowlab/poly.hpp"

#include <algorithm>
#include <sstream>

namespace flowlab {

BigRat pow_rat(const BigRat& q, long e) {
    if (e < 0) {
        if (q == 0) throw domain_error("negative power of zero");
        return 1 / pow_rat(q, -e);
    }
    BigRat acc(1), base = q;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// RationalPoly

RationalPoly::RationalPoly(const BigRat& c) {
    if (c != 0) terms_[{0, 0, 0}] = c;
}

RationalPoly RationalPoly::variable(Var v) {
    RationalPoly p;
    Key k{0, 0, 0};
    k[static_cast<int>(v)] = 1;
    p.terms_[k] = 1;
    return p;
}

RationalPoly RationalPoly::monomial(const BigRat& c, int ea, int e1, int e2) {
    RationalPoly p;
    if (c != 0) p.terms_[{ea, e1, e2}] = c;
    return p;
}

bool RationalPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0, 0});
}

BigRat RationalPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw domain_error("polynomial is not constant");
    return terms_.begin()->second;
}

int RationalPoly::degree(Var v) const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k[static_cast<int>(v)]);
    return d;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) { return *this += -o; }

RationalPoly RationalPoly::operator-() const {
    RationalPoly r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            RationalPoly::Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
            auto it = r.terms_.find(k);
            if (it == r.terms_.end()) {
                BigRat prod = ca * cb;
                if (prod != 0) r.terms_.emplace(k, std::move(prod));
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

RationalPoly RationalPoly::scaled(const BigRat& c) const {
    RationalPoly r;
    if (c == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
    return r;
}

RationalPoly RationalPoly::pow(int e) const {
    if (e < 0) throw domain_error("negative polynomial power");
    RationalPoly acc(BigRat(1));
    for (int i = 0; i < e; ++i) acc *= *this;
    return acc;
}

RationalPoly RationalPoly::derivative(Var v) const {
    const int iv = static_cast<int>(v);
    RationalPoly r;
    for (const auto& [k, c] : terms_) {
        if (k[iv] == 0) continue;
        Key kk = k;
        kk[iv] -= 1;
        r.terms_[kk] = c * k[iv];
    }
    return r;
}

RationalPoly RationalPoly::substitute(Var v, const BigRat& value) const {
    const int iv = static_cast<int>(v);
    RationalPoly r;
    for (const auto& [k, c] : terms_) {
        Key kk = k;
        kk[iv] = 0;
        RationalPoly term = monomial(c * pow_rat(value, k[iv]), kk[0], kk[1], kk[2]);
        r += term;
    }
    return r;
}

RationalPoly RationalPoly::substitute(Var v, const RationalPoly& value) const {
    const int iv = static_cast<int>(v);
    RationalPoly r;
    for (const auto& [k, c] : terms_) {
        Key kk = k;
        kk[iv] = 0;
        RationalPoly term = monomial(c, kk[0], kk[1], kk[2]) * value.pow(k[iv]);
        r += term;
    }
    return r;
}

RationalPoly RationalPoly::swap_kappas() const {
    RationalPoly r;
    for (const auto& [k, c] : terms_) r.terms_[{k[0], k[2], k[1]}] = c;
    return r;
}

BigRat RationalPoly::eval(const BigRat& a, const BigRat& k1, const BigRat& k2) const {
    BigRat acc(0);
    for (const auto& [k, c] : terms_)
        acc += c * pow_rat(a, k[0]) * pow_rat(k1, k[1]) * pow_rat(k2, k[2]);
    return acc;
}

double RationalPoly::eval_double(double a, double k1, double k2) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = to_double(c);
        for (int i = 0; i < k[0]; ++i) t *= a;
        for (int i = 0; i < k[1]; ++i) t *= k1;
        for (int i = 0; i < k[2]; ++i) t *= k2;
        acc += t;
    }
    return acc;
}

std::vector<RationalPoly> RationalPoly::coefficients(Var v) const {
    if (terms_.empty()) return {};
    const int iv = static_cast<int>(v);
    std::vector<RationalPoly> out(degree(v) + 1);
    for (const auto& [k, c] : terms_) {
        Key kk = k;
        kk[iv] = 0;
        out[k[iv]] += monomial(c, kk[0], kk[1], kk[2]);
    }
    return out;
}

RationalPoly RationalPoly::divide_exact(const RationalPoly& divisor) const {
    if (divisor.is_zero()) throw domain_error("division by the zero polynomial");
    RationalPoly rem = *this, quot;
    // Reduce against the divisor's lexicographically largest monomial.
    const auto& lead = *divisor.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& top = *rem.terms_.rbegin();
        Key q;
        bool divisible = true;
        for (int i = 0; i < 3; ++i) {
            q[i] = top.first[i] - lead.first[i];
            if (q[i] < 0) divisible = false;
        }
        if (!divisible) throw domain_error("polynomial division is not exact");
        RationalPoly m = monomial(top.second / lead.second, q[0], q[1], q[2]);
        quot += m;
        rem -= m * divisor;
    }
    return quot;
}

std::string RationalPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    static const char* names[3] = {"a", "k1", "k2"};
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (int i = 0; i < 3; ++i) {
            if (k[i] == 0) continue;
            os << "*" << names[i];
            if (k[i] > 1) os << "^" << k[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const BigRat& c) { return UniPoly(std::vector<BigRat>{c}); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigRat& UniPoly::leading() const {
    if (c_.empty()) throw domain_error("zero polynomial has no leading coefficient");
    return c_.back();
}

BigRat UniPoly::eval(const BigRat& x) const {
    BigRat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * BigRat(static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-() const {
    std::vector<BigRat> d(c_);
    for (auto& x : d) x = -x;
    return UniPoly(std::move(d));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<BigRat> d(std::max(a.c_.size(), b.c_.size()), BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
    return UniPoly(std::move(d));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> d(a.c_.size() + b.c_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(d));
}

UniPoly UniPoly::rem(const UniPoly& d) const {
    if (d.is_zero()) throw domain_error("polynomial remainder by zero");
    std::vector<BigRat> r = c_;
    const int dd = d.degree();
    while (static_cast<int>(r.size()) - 1 >= dd) {
        const BigRat q = r.back() / d.c_.back();
        const std::size_t shift = r.size() - d.c_.size();
        for (std::size_t i = 0; i < d.c_.size(); ++i) r[shift + i] -= q * d.c_[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return {};
    BigInt num_gcd = 0, den_lcm = 1;
    for (const auto& q : c_) {
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(q));
        den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(q));
    }
    if (num_gcd == 0) return {};
    const BigRat scale = BigRat(den_lcm, num_gcd);  // positive
    std::vector<BigRat> d(c_);
    for (auto& x : d) x *= scale;
    return UniPoly(std::move(d));
}

std::string UniPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i].str();
        if (i > 0) os << "*x^" << i;
    }
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.primitive(), y = b.primitive();
    while (!y.is_zero()) {
        UniPoly r = x.rem(y).primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() <= 1) return p;
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    // exact division p / g via repeated leading-term elimination
    std::vector<BigRat> r = p.coeffs();
    std::vector<BigRat> q(p.degree() - g.degree() + 1, BigRat(0));
    const auto& gc = g.coeffs();
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
        if (static_cast<int>(r.size()) - 1 < g.degree() + i) continue;
        const BigRat f = r[g.degree() + i] / gc.back();
        q[i] = f;
        for (std::size_t j = 0; j < gc.size(); ++j) r[i + j] -= f * gc[j];
    }
    return UniPoly(std::move(q));
}

BigRat cauchy_root_bound(const UniPoly& p) {
    if (p.degree() <= 0) return BigRat(1);
    BigRat m(0);
    const auto& c = p.coeffs();
    for (int i = 0; i < p.degree(); ++i) {
        const BigRat a = abs(BigRat(c[i] / c.back()));
        if (a > m) m = a;
    }
    return BigRat(m + 1);
}

std::string RatInterval::str() const {
    std::string s = "(";
    s += lo_infinite ? "-inf" : lo.str();
    s += ", ";
    s += hi_infinite ? "+inf" : hi.str();
    s += "]";
    return s;
}

// ---------------------------------------------------------------------------
// Sturm sequences

SturmSequence::SturmSequence(const UniPoly& squarefree) {
    seq_.push_back(squarefree.primitive());
    if (squarefree.degree() >= 1) {
        seq_.push_back(squarefree.derivative().primitive());
        while (seq_.back().degree() >= 1) {
            UniPoly r = seq_[seq_.size() - 2].rem(seq_.back());
            if (r.is_zero()) break;
            seq_.push_back((-r).primitive());
        }
    }
}

namespace {
int count_changes(const std::vector<int>& signs) {
    int changes = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}
}  // namespace

int SturmSequence::variations_at(const BigRat& x) const {
    std::vector<int> signs;
    signs.reserve(seq_.size());
    for (const auto& p : seq_) signs.push_back(p.is_zero() ? 0 : sign_of(p.eval(x)));
    return count_changes(signs);
}

int SturmSequence::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : seq_) signs.push_back(p.is_zero() ? 0 : sign_of(p.leading()));
    return count_changes(signs);
}

int SturmSequence::roots_in(const BigRat& lo, const BigRat& hi) const {
    return variations_at(lo) - variations_at(hi);
}

int SturmSequence::roots_above(const BigRat& lo) const {
    return variations_at(lo) - variations_at_pos_inf();
}

std::vector<RatInterval> isolate_roots(const UniPoly& p, const RatInterval& where) {
    if (where.lo_infinite) throw domain_error("isolation requires a finite lower endpoint");
    const UniPoly sf = squarefree_part(p).primitive();
    if (sf.degree() <= 0) return {};
    const SturmSequence sturm(sf);

    BigRat hi = where.hi;
    if (where.hi_infinite) {
        hi = cauchy_root_bound(sf);
        const BigRat lo1 = BigRat(where.lo + 1);
        if (lo1 > hi) hi = lo1;
    }

    std::vector<RatInterval> out;
    std::vector<RatInterval> stack;
    if (sturm.roots_in(where.lo, hi) <= 0) return {};
    stack.push_back(RatInterval::closed(where.lo, hi));
    while (!stack.empty()) {
        RatInterval iv = stack.back();
        stack.pop_back();
        const int n = sturm.roots_in(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            out.push_back(iv);
            continue;
        }
        const BigRat mid = (iv.lo + iv.hi) / 2;
        stack.push_back(RatInterval::closed(iv.lo, mid));
        stack.push_back(RatInterval::closed(mid, iv.hi));
    }
    std::sort(out.begin(), out.end(),
              [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    return out;
}

SignCheck nonpositive_on(const UniPoly& p, const RatInterval& where) {
    SignCheck result;
    if (p.is_zero()) {
        result.nonpositive = true;
        result.detail = "identically zero";
        return result;
    }
    if (where.lo_infinite) throw domain_error("sign check requires a finite lower endpoint");

    // Finite endpoints (limits for open ends; continuity makes the closed
    // check correct either way).
    const BigRat at_lo = p.eval(where.lo);
    if (at_lo > 0) {
        result.detail = "positive at lower endpoint " + where.lo.str();
        return result;
    }
    if (!where.hi_infinite) {
        const BigRat at_hi = p.eval(where.hi);
        if (at_hi > 0) {
            result.detail = "positive at upper endpoint " + where.hi.str();
            return result;
        }
    } else {
        if (p.leading() > 0) {
            result.detail = "positive limit at +inf (leading coefficient " + p.leading().str() + ")";
            return result;
        }
    }

    const auto roots = isolate_roots(p, where);
    BigRat hi = where.hi;
    if (where.hi_infinite) {
        hi = BigRat(cauchy_root_bound(p.primitive()) + 1);
        const BigRat lo1 = BigRat(where.lo + 1);
        if (lo1 > hi) hi = lo1;
    }

    // Sample once inside every root-free gap between isolating intervals.
    std::vector<BigRat> samples;
    BigRat cursor = where.lo;
    for (const auto& r : roots) {
        if (r.lo > cursor) samples.push_back((cursor + r.lo) / 2);
        cursor = r.hi;
    }
    if (hi > cursor) samples.push_back((cursor + hi) / 2);

    std::ostringstream detail;
    detail << roots.size() << " root(s) isolated in " << where.str();
    for (const auto& r : roots) detail << " " << r.str();
    for (const auto& s : samples) {
        const BigRat v = p.eval(s);
        if (v > 0) {
            result.detail = "positive value " + v.str() + " at sample " + s.str();
            return result;
        }
    }
    detail << "; " << samples.size() << " gap sample(s) nonpositive";
    result.nonpositive = true;
    result.detail = detail.str();
    return result;
}

}  // namespace flowlab
