#include "qmix/stars.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmix/config.hpp"

namespace qmix::stars {

StarBlocks star_transition(int n, double t) {
    if (n < 1) throw std::invalid_argument("star_transition: need n >= 1");
    StarBlocks b;
    b.n = n;
    b.t = t;
    const double s = std::sqrt(static_cast<double>(n));
    const double c = std::cos(s * t);
    const std::complex<double> i(0.0, 1.0);
    b.corner = c;
    b.cone_leaf = i * std::sin(s * t) / s;
    b.leaf_same = 1.0 + (c - 1.0) / n;
    b.leaf_other = (c - 1.0) / n;
    return b;
}

Eigen::MatrixXd star_adjacency(int n) {
    if (n < 1) throw std::invalid_argument("star_adjacency: need n >= 1");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int l = 1; l <= n; ++l) a(0, l) = a(l, 0) = 1.0;
    return a;
}

std::vector<double> local_mixing_times(int n, int count) {
    if (n < 1) throw std::invalid_argument("local_mixing_times: need n >= 1");
    const double s = std::sqrt(static_cast<double>(n));
    const double base = std::atan(s);
    std::vector<double> out;
    const double pi = std::acos(-1.0);
    for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
        const double plus = (base + k * pi) / s;
        const double minus = (-base + (k + 1) * pi) / s;
        out.push_back(plus);
        if (static_cast<int>(out.size()) < count) out.push_back(minus);
    }
    std::sort(out.begin(), out.end());
    out.resize(static_cast<std::size_t>(count));
    return out;
}

bool mixes_locally_at_cone(int n, double t) {
    return walk::is_local_uniform_mixing(star_adjacency(n), t, 0).flat;
}

StarVerdict star_verdict(int n) {
    if (n < 1) throw std::invalid_argument("star_verdict: need n >= 1");
    StarVerdict v;
    v.n = n;
    if (n == 1) {
        v.global = true;
        v.global_times = {walk::rational_time(1, 8), walk::rational_time(3, 8)};
    } else if (n == 3) {
        v.global = true;
        v.global_times = {walk::surd_time(1, 1, 27), walk::surd_time(2, 1, 27)};
    }
    return v;
}

ClawPowerResult claw_power_check(int m) {
    if (m < 1) throw std::invalid_argument("claw_power_check: need m >= 1");
    long vertices = 1;
    for (int i = 0; i < m; ++i) {
        if (vertices > static_cast<long>(caps().dense / 4))
            throw CapExceeded("claw power exceeds the dense-oracle cap");
        vertices *= 4;
    }
    ClawPowerResult r;
    r.m = m;
    r.vertices = vertices;
    r.time = walk::surd_time(1, 1, 27);
    Eigen::MatrixXd a = star_adjacency(3);
    for (int i = 1; i < m; ++i) a = walk::cartesian_product(a, star_adjacency(3));
    r.verdict = walk::is_uniform_mixing_dense(a, r.time.seconds());
    return r;
}

}  // namespace qmix::stars
