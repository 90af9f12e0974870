#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qmix/ints.hpp"
#include "qmix/walk.hpp"

namespace qmix::stars {

/// Transition amplitudes of the star K_{1,n} at time t.  The adjacency
/// matrix satisfies A^3 = nA, so with s = sqrt(n):
///   U(t) = I + (i/s) sin(st) A + (1/n)(cos(st) - 1) A^2.
struct StarBlocks {
    int n = 1;
    double t = 0.0;
    std::complex<double> corner;      // cone -> cone
    std::complex<double> cone_leaf;   // cone -> any leaf (and back)
    std::complex<double> leaf_same;   // leaf -> itself
    std::complex<double> leaf_other;  // leaf -> a different leaf
};

StarBlocks star_transition(int n, double t);

/// Vertex 0 is the cone.
Eigen::MatrixXd star_adjacency(int n);

/// First `count` positive times with a flat cone column, in increasing
/// order.  The family is (+-arctan(sqrt n) + k pi) / sqrt(n).
std::vector<double> local_mixing_times(int n, int count);

/// Dense-oracle check of the cone column at time t.
bool mixes_locally_at_cone(int n, double t);

struct StarVerdict {
    int n = 1;
    bool local = true;    // every star mixes locally at the cone
    bool global = false;  // only n = 1 and n = 3
    std::vector<walk::WalkTime> global_times;
};

StarVerdict star_verdict(int n);

/// Cartesian power K_{1,3}^m checked by the dense oracle at t = 2pi/sqrt27,
/// a common global mixing time of every factor.
struct ClawPowerResult {
    int m = 1;
    long vertices = 4;
    walk::WalkTime time;
    walk::MixingVerdict verdict;
};

ClawPowerResult claw_power_check(int m);

}  // namespace qmix::stars
