#include <random>

#include "doctest.h"
#include "flowlab/certify.hpp"

using namespace flowlab;

namespace {
const RationalPoly A = RationalPoly::variable(Var::Alpha);
const RationalPoly K1 = RationalPoly::variable(Var::Kappa1);
const RationalPoly K2 = RationalPoly::variable(Var::Kappa2);

// Independent second transcription of the hyperbolic mean-power gradient
// coefficient: the pre-collection form (sum of six products) rather than
// the quadratic-in-alpha grouping used by coeff_a1.
RationalPoly meanpow_a1_alternative() {
    const RationalPoly x = K1 - K2;
    const RationalPoly H = K1 + K2;
    const RationalPoly Km1 = K1 * K2 - RationalPoly(1);
    const RationalPoly y1 = K1 * K1 - RationalPoly(1);
    const RationalPoly y2 = K2 * K2 - RationalPoly(1);
    const RationalPoly S = K1 * K1 + K2 * K2 - RationalPoly(2);
    return (A - RationalPoly(1)) * x * y2 * S.pow(2) * H -
           A.scaled(BigRat(4)) * H * x * Km1.pow(2) * S -
           A.scaled(BigRat(4)) * H * x.pow(3) * y2 * Km1 -
           y2.pow(2).scaled(BigRat(2)) * S * H.pow(2) +
           x.pow(2).scaled(BigRat(2)) * y1 * y2 * H.pow(2) +
           A.pow(2).scaled(BigRat(4)) * x.pow(2) * Km1.pow(3);
}

BigRat random_rat(std::mt19937_64& rng, long lo_num, long hi_num, long max_den) {
    std::uniform_int_distribution<long> num(lo_num, hi_num), den(1, max_den);
    return BigRat(num(rng), den(rng));
}

// Random point strictly inside the cone.
std::pair<BigRat, BigRat> cone_point(std::mt19937_64& rng, Cone cone) {
    const BigRat k2 = random_rat(rng, 1, 24, 8);
    BigRat lo = k2;
    if (cone == Cone::ScalarPositive) {
        const BigRat inv = BigRat(1) / k2;
        if (inv > lo) lo = inv;
    }
    const BigRat k1 = lo + random_rat(rng, 1, 16, 8);
    return {k1, k2};
}
}  // namespace

TEST_CASE("transcribed coefficient examples") {
    SUBCASE("scalar power at alpha = 1 collapses to -4 k2 (K-1)^2") {
        RationalPoly a1 = coeff_a1(FlowKind::ScalarPow, -1).substitute(Var::Alpha, BigRat(1));
        RationalPoly expect = (K2 * (K1 * K2 - RationalPoly(1)).pow(2)).scaled(BigRat(-4));
        CHECK(a1 == expect);
        RationalPoly a2 = a2_from_a1(coeff_a1(FlowKind::ScalarPow, -1)).substitute(Var::Alpha, BigRat(1));
        RationalPoly expect2 = (K1 * (K1 * K2 - RationalPoly(1)).pow(2)).scaled(BigRat(-4));
        CHECK(a2 == expect2);
    }
    SUBCASE("mean power on the umbilic diagonal at alpha = 1/3: -16 k2^2 (k2^2-1)^3") {
        RationalPoly diag = coeff_a1(FlowKind::MeanPow, -1)
                                .substitute(Var::Alpha, BigRat(1, 3))
                                .substitute(Var::Kappa1, K2);
        RationalPoly expect =
            (K2.pow(2) * (K2 * K2 - RationalPoly(1)).pow(3)).scaled(BigRat(-16));
        CHECK(diag == expect);
    }
    SUBCASE("mean power at (1/3, 2, 1) against the independent transcription") {
        const BigRat a(1, 3), k1(2), k2(1);
        CHECK(coeff_a1(FlowKind::MeanPow, -1).eval(a, k1, k2) ==
              meanpow_a1_alternative().eval(a, k1, k2));
    }
    SUBCASE("the two mean-power transcriptions agree as polynomials") {
        CHECK(coeff_a1(FlowKind::MeanPow, -1) == meanpow_a1_alternative());
    }
    SUBCASE("unsupported cases are explicit errors") {
        CHECK_THROWS_AS(coeff_a1(FlowKind::MeanPow, +1), domain_error);
        CHECK_THROWS_AS(coeff_a1(FlowKind::ScalarPow, +1), domain_error);
        CHECK_THROWS_AS(coeff_a1(FlowKind::MeanPow, 0), domain_error);
    }
}

TEST_CASE("a2_from_a1 involution and symmetry") {
    RationalPoly a1 = coeff_a1(FlowKind::GaussPow, -1);
    CHECK(a2_from_a1(a2_from_a1(a1)) == a1);
    RationalPoly symmetric = K1 * K2 + (K1 + K2).pow(2);
    CHECK(a2_from_a1(symmetric) == symmetric);
}

TEST_CASE("numeric gradient_Z") {
    SUBCASE("linear mean power: the second-derivative group vanishes") {
        SpeedSpec s{FlowKind::MeanPow, 1.0, Ambient::hyperbolic()};
        const double k1 = 2.0, k2 = 1.25;
        auto jet = speed_jet(s, k1, k2);
        auto fr = gradient_frame(jet, k1, k2);
        const double z = gradient_Z(jet, k1, k2, fr.beta, fr.gamma);
        // recompute with the f'' terms zeroed; must match exactly
        SpeedJet no2 = jet;
        no2.f11 = no2.f22 = no2.f12 = 0.0;
        CHECK(z == gradient_Z(no2, k1, k2, fr.beta, fr.gamma));
    }
    SUBCASE("umbilic input is rejected") {
        SpeedSpec s{FlowKind::MeanPow, 2.0, Ambient::hyperbolic()};
        auto jet = speed_jet(s, 2.0, 2.0);
        CHECK_THROWS_AS(gradient_Z(jet, 2.0, 2.0, 1.0, 1.0), domain_error);
    }
    SUBCASE("rescaled numeric Z matches the coefficient polynomial") {
        // mean power, alpha = 2, kappa = (2, 3/4)
        SpeedSpec s{FlowKind::MeanPow, 2.0, Ambient::hyperbolic()};
        const double k1 = 2.0, k2 = 0.75;
        auto jet = speed_jet(s, k1, k2);
        auto fr = gradient_frame(jet, k1, k2);
        const double z = gradient_Z(jet, k1, k2, fr.beta, fr.gamma);
        const double km1 = k1 * k2 - 1.0;
        const double H = k1 + k2;
        const double a1 = km1 * km1 * km1 / (2.0 * 2.0 * std::pow(H, 5 * 2.0 - 3.0)) * z;
        const double expect = coeff_a1(FlowKind::MeanPow, -1).eval_double(2.0, k1, k2);
        CHECK(a1 == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("gauss power alpha = 1/2 at (3, 1/2)") {
        SpeedSpec s{FlowKind::GaussPow, 0.5, Ambient::hyperbolic()};
        const double k1 = 3.0, k2 = 0.5;
        auto jet = speed_jet(s, k1, k2);
        auto fr = gradient_frame(jet, k1, k2);
        const double z = gradient_Z(jet, k1, k2, fr.beta, fr.gamma);
        const double km1 = k1 * k2 - 1.0;
        const double K = k1 * k2;
        const double a1 = z * km1 * km1 / (2.0 * 0.5 * std::pow(K, 5 * 0.5 - 2.0));
        const double expect = coeff_a1(FlowKind::GaussPow, -1).eval_double(0.5, k1, k2);
        CHECK(a1 == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("exact oracle equals the transcription at random rational cone points") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> alpha_num(1, 12), alpha_den(1, 6);
    struct Case {
        FlowKind kind;
        int c;
    };
    for (Case cs : {Case{FlowKind::MeanPow, -1}, Case{FlowKind::ScalarPow, -1},
                    Case{FlowKind::GaussPow, -1}, Case{FlowKind::GaussPow, +1}}) {
        const RationalPoly a1 = coeff_a1(cs.kind, cs.c);
        const Cone cone = cone_for(cs.c);
        for (int i = 0; i < 100; ++i) {
            const BigRat alpha(alpha_num(rng), alpha_den(rng));
            auto [k1, k2] = cone_point(rng, cone);
            const BigRat via_oracle = gradient_a1_exact(cs.kind, cs.c, alpha, k1, k2);
            const BigRat via_poly = a1.eval(alpha, k1, k2);
            CHECK(via_oracle == via_poly);  // exact, zero tolerance
        }
    }
}

TEST_CASE("alpha convexity certificates") {
    SUBCASE("mean power: 4 (k1-k2)^2 (k1 k2 - 1)^3") {
        auto cert = alpha_convexity(coeff_a1(FlowKind::MeanPow, -1), Cone::ScalarPositive);
        CHECK(cert.convex);
        CHECK(cert.factorization.find("(k1-k2)^2") != std::string::npos);
        CHECK(cert.factorization.find("(k1*k2-1)^3") != std::string::npos);
    }
    SUBCASE("scalar power: 4 k1 k2^2 (k1-k2)^2") {
        auto cert = alpha_convexity(coeff_a1(FlowKind::ScalarPow, -1), Cone::ScalarPositive);
        CHECK(cert.convex);
        CHECK(cert.factorization.find("k1^1") != std::string::npos);
        CHECK(cert.factorization.find("k2^2") != std::string::npos);
    }
    SUBCASE("spherical gauss power: 4 k1 (k1-k2)^2") {
        auto cert = alpha_convexity(coeff_a1(FlowKind::GaussPow, +1), Cone::Convex);
        CHECK(cert.convex);
    }
    SUBCASE("not quadratic in alpha is an error") {
        CHECK_THROWS_AS(alpha_convexity(K1 * K2, Cone::Convex), domain_error);
    }
}

TEST_CASE("endpoint certificates") {
    SUBCASE("mean power, both endpoints and both coefficients") {
        const RationalPoly a1 = coeff_a1(FlowKind::MeanPow, -1);
        const RationalPoly a2 = a2_from_a1(a1);
        for (const auto& p : {a1, a2}) {
            for (const BigRat alpha : {BigRat(1, 3), BigRat(4)}) {
                auto cert = certify_endpoint(p, alpha, Cone::ScalarPositive);
                CHECK(cert.status == CertStatus::Certified);
                CHECK(cert.branches.size() == 2);
                for (const auto& br : cert.branches) CHECK(br.route == "derivative chain");
            }
        }
    }
    SUBCASE("scalar power a1 at 1/4 needs the quadratic-form route") {
        const RationalPoly a1 = coeff_a1(FlowKind::ScalarPow, -1);
        auto cert = certify_endpoint(a1, BigRat(1, 4), Cone::ScalarPositive);
        CHECK(cert.status == CertStatus::Certified);
        bool used_quadratic = false;
        for (const auto& br : cert.branches)
            if (br.route == "quadratic form" && br.certified) {
                used_quadratic = true;
                // the paper-shape discriminant -3 k2^4 - 12 k2 x
                CHECK(br.note.find("discriminant") != std::string::npos);
            }
        CHECK(used_quadratic);
    }
    SUBCASE("a positive polynomial is falsified with an in-cone witness") {
        RationalPoly pos = (K1 - K2) * (K1 - K2);  // >= 0, positive off the diagonal
        auto cert = certify_endpoint(pos, BigRat(1), Cone::ScalarPositive);
        CHECK(cert.status == CertStatus::Falsified);
        CHECK(!cert.falsifying_point.empty());
    }
    SUBCASE("zero polynomial is trivially certified") {
        auto cert = certify_endpoint(RationalPoly(), BigRat(1), Cone::Convex);
        CHECK(cert.status == CertStatus::Certified);
    }
}

TEST_CASE("theorem certificates for the four in-scope cases") {
    for (const auto& tc : certified_cases()) {
        auto summary = certify_theorem(tc.kind, tc.ambient_c);
        INFO(tc.id, ": failing link = ", summary.failing_link);
        CHECK(summary.status == CertStatus::Certified);
        CHECK(summary.a1_convexity.convex);
        CHECK(summary.a2_convexity.convex);
    }
    CHECK_THROWS_AS(certify_theorem(FlowKind::MeanPow, +1), domain_error);
}

TEST_CASE("falsification scans") {
    SUBCASE("mean power alpha = 2: strictly negative over 10^4 cone samples") {
        auto rep = falsification_scan(coeff_a1(FlowKind::MeanPow, -1), Cone::ScalarPositive,
                                      BigRat(2), BigRat(2), 1, 10000, 42);
        CHECK(rep.samples >= 10000);
        CHECK_FALSE(rep.any_positive);
        CHECK(rep.max_value < 0);
    }
    SUBCASE("umbilic boundary gives zero: (k1-k2) divides every coefficient") {
        for (const auto& tc : certified_cases()) {
            RationalPoly diag = coeff_a1(tc.kind, tc.ambient_c).substitute(Var::Kappa1, K2);
            // mean/scalar/gauss hyperbolic coefficients keep a (k2^2-1)-type
            // factor on the diagonal; they vanish only with the (k1-k2)^2
            // numerator of G.  The spherical bracket vanishes outright at
            // alpha = 1.
            if (tc.kind == FlowKind::GaussPow && tc.ambient_c == +1)
                CHECK(diag.substitute(Var::Alpha, BigRat(1)).eval(0, 0, BigRat(2)) < 0);
            else
                CHECK(!diag.is_zero());
        }
    }
    SUBCASE("out-of-range alpha is reported without judgment") {
        auto rep = falsification_scan(coeff_a1(FlowKind::MeanPow, -1), Cone::ScalarPositive,
                                      BigRat(10), BigRat(10), 1, 500, 7);
        CHECK(rep.samples >= 500);
        CHECK(rep.any_positive);  // the claim really does fail far outside the range
    }
}
