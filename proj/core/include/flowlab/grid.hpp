#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "flowlab/errors.hpp"

namespace flowlab {

enum class GridMode { Axisymmetric, Full };

std::string to_string(GridMode m);

/// Staggered latitude-longitude grid on the unit 2-sphere.
///
/// Nodes sit at theta_j = (j + 1/2) * h_theta, so the poles are never grid
/// points.  Fields extend across the poles by even reflection: in
/// axisymmetric mode u(-theta) = u(theta); in full mode
/// u(-theta, phi) = u(theta, phi + pi), which requires n_phi to be even.
class SphereGrid {
public:
    SphereGrid(GridMode mode, int n_theta, int n_phi = 1);

    GridMode mode() const { return mode_; }
    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    int node_count() const { return n_theta_ * n_phi_; }

    double h_theta() const { return h_theta_; }
    double h_phi() const { return h_phi_; }

    double theta(int j) const { return (j + 0.5) * h_theta_; }
    double sin_theta(int j) const { return sin_theta_[j]; }
    double cos_theta(int j) const { return cos_theta_[j]; }

    int index(int j, int k) const { return j * n_phi_ + k; }

    /// Node index after reflecting a theta-ghost across the nearer pole.
    /// Valid for j in [-1, n_theta]; phi picks up a half-turn in full mode.
    int ghost_index(int j, int k) const {
        if (j < 0) {
            j = -1 - j;
            k = opposite_phi(k);
        } else if (j >= n_theta_) {
            j = 2 * n_theta_ - 1 - j;
            k = opposite_phi(k);
        }
        return index(j, wrap_phi(k));
    }

    int wrap_phi(int k) const {
        k %= n_phi_;
        return k < 0 ? k + n_phi_ : k;
    }

    friend bool operator==(const SphereGrid&, const SphereGrid&) = default;

private:
    int opposite_phi(int k) const {
        return mode_ == GridMode::Full ? k + n_phi_ / 2 : k;
    }

    GridMode mode_;
    int n_theta_;
    int n_phi_;
    double h_theta_;
    double h_phi_;
    std::vector<double> sin_theta_;
    std::vector<double> cos_theta_;
};

}  // namespace flowlab
