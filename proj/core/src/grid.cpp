#include "flowlab/grid.hpp"

namespace flowlab {

std::string to_string(GridMode m) {
    return m == GridMode::Axisymmetric ? "axisymmetric" : "full";
}

SphereGrid::SphereGrid(GridMode mode, int n_theta, int n_phi)
    : mode_(mode), n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta_ < 16)
        throw domain_error("n_theta must be at least 16, got " + std::to_string(n_theta_));
    if (mode_ == GridMode::Axisymmetric) {
        if (n_phi_ != 1)
            throw domain_error("axisymmetric mode requires n_phi = 1");
    } else {
        if (n_phi_ < 8 || n_phi_ % 2 != 0)
            throw domain_error("full mode requires even n_phi >= 8, got " + std::to_string(n_phi_));
    }
    h_theta_ = std::numbers::pi / n_theta_;
    h_phi_ = 2.0 * std::numbers::pi / n_phi_;
    sin_theta_.resize(n_theta_);
    cos_theta_.resize(n_theta_);
    for (int j = 0; j < n_theta_; ++j) {
        sin_theta_[j] = std::sin(theta(j));
        cos_theta_[j] = std::cos(theta(j));
    }
}

}  // namespace flowlab
