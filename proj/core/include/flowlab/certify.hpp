#pragma once

#include <cstdint>
#include <vector>

#include "flowlab/poly.hpp"
#include "flowlab/speeds.hpp"

namespace flowlab {

/// Admissibility cone of the certified sign claims.
///   ScalarPositive: kappa1 > kappa2, kappa1*kappa2 > 1   (hyperbolic flows)
///   Convex:         kappa1 > kappa2 > 0                  (spherical flows)
enum class Cone { ScalarPositive, Convex };

Cone cone_for(int ambient_c);
std::string to_string(Cone c);

/// Closed-form gradient-term coefficient a1(alpha, kappa1, kappa2) of the
/// pinching-quantity evolution for the flows that have one:
/// (MeanPow, -1), (ScalarPow, -1), (GaussPow, -1), (GaussPow, +1).
/// The spherical GaussPow entry is the bracket factor of its gradient
/// coefficient (the positive prefactor 2 a K^{3a-1}/k1^2 is dropped).
/// Throws domain_error for combinations without a closed-form coefficient.
RationalPoly coeff_a1(FlowKind kind, int ambient_c);

/// a2(alpha, k1, k2) = a1(alpha, k2, k1).
RationalPoly a2_from_a1(const RationalPoly& p);

/// alpha interval on which the (kind, ambient) sign claim is made.
struct TheoremCase {
    FlowKind kind;
    int ambient_c;
    BigRat alpha_lo, alpha_hi;
    std::string id;
};
std::vector<TheoremCase> certified_cases();

/// Gradient frame at a critical point of the pinching quantity
/// (hyperbolic form): beta = (k1-k2)(K-1) f1 + (k2^2-1) f,
///                    gamma = (k1-k2)(K-1) f2 - (k1^2-1) f.
struct GradientFrame {
    double beta = 0.0;
    double gamma = 0.0;
    double T1sq = 0.0;
    double T2sq = 0.0;
};

GradientFrame gradient_frame(const SpeedJet& jet, double k1, double k2);

/// General gradient-term coefficient in front of T1^2 for the hyperbolic
/// pinching quantity, evaluated numerically from a speed jet.  Requires
/// kappa1 != kappa2 (the frame degenerates on the umbilic set).
double gradient_Z(const SpeedJet& jet, double k1, double k2, double beta, double gamma);

/// Exact-rational evaluation of a1 through the general gradient-term
/// formula (machine-differentiated speed and pinching-quantity jets plus
/// the case rescaling), used as the transcription oracle for coeff_a1.
/// Agreement with coeff_a1(...).eval(...) is exact.
BigRat gradient_a1_exact(FlowKind kind, int ambient_c, const BigRat& alpha, const BigRat& k1,
                         const BigRat& k2);

// ---------------------------------------------------------------------------
// Certificates

enum class CertStatus { Certified, Falsified, Inconclusive };
std::string to_string(CertStatus s);

struct ChainLink {
    int order = 0;         // derivative order in kappa1
    bool nonpositive = false;
    std::string detail;    // isolated roots / failing sample
};

struct BranchReport {
    std::string name;      // e.g. "k2 in [1, inf), anchor k2"
    std::string route;     // "derivative chain" or "quadratic form"
    bool certified = false;
    std::vector<ChainLink> links;
    std::string note;
};

struct SignCertificate {
    std::string case_id;
    CertStatus status = CertStatus::Inconclusive;
    std::vector<BranchReport> branches;
    std::string falsifying_point;  // strictly-inside-cone witness when Falsified
};

/// Structural positivity certificate for the alpha^2 coefficient: the
/// coefficient factors into a positive constant times powers of (k1-k2),
/// k1, k2 and (for the hyperbolic cone) (k1*k2-1), all positive on the
/// open cone.  Throws when p is not quadratic in alpha.
struct ConvexityCertificate {
    bool convex = false;
    std::string factorization;
};

ConvexityCertificate alpha_convexity(const RationalPoly& p, Cone cone);

/// Nonpositivity of p(alpha0, k1, k2) on the cone, alpha0 substituted
/// exactly.  Tries the anchored derivative chain per branch first (all
/// kappa1-derivatives at the anchor nonpositive on the branch interval by
/// Sturm root isolation), then the quadratic-form route, then an exact
/// falsification search.
SignCertificate certify_endpoint(const RationalPoly& p, const BigRat& alpha, Cone cone);

/// order-th kappa1-derivative of p(alpha0, ., .), anchored at kappa1 = kappa2,
/// as a univariate polynomial in kappa2.
UniPoly chain_value_at_k2(const RationalPoly& p, const BigRat& alpha, int order);

/// Same anchored at kappa1 = 1/kappa2; the value is numerator / kappa2^shift
/// with kappa2 > 0, so the numerator carries the sign.
struct ClearedValue {
    UniPoly numerator;
    int shift = 0;
};
ClearedValue chain_value_at_inv_k2(const RationalPoly& p, const BigRat& alpha, int order);

struct TheoremSummary {
    TheoremCase tcase;
    CertStatus status = CertStatus::Inconclusive;
    ConvexityCertificate a1_convexity, a2_convexity;
    SignCertificate a1_lo, a1_hi, a2_lo, a2_hi;
    std::string failing_link;
};

/// Convexity in alpha plus both endpoint certificates for a1 and a2;
/// certified iff all six sub-certificates pass (convexity reduces interior
/// alpha to the endpoints).
TheoremSummary certify_theorem(FlowKind kind, int ambient_c);

/// Exact-rational evaluation of p over a structured cone grid plus seeded
/// random rational cone points, across an alpha range.  Reports the maximum
/// value found and any strictly positive hits.
struct ScanReport {
    long samples = 0;
    BigRat max_value;
    bool any_positive = false;
    std::vector<std::string> positive_points;
};

ScanReport falsification_scan(const RationalPoly& p, Cone cone, const BigRat& alpha_lo,
                              const BigRat& alpha_hi, int alpha_steps, long kappa_samples,
                              std::uint64_t seed);

}  // namespace flowlab
