#include "wsntrack/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wsntrack {

namespace {

struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;  // [a b; c d]
};

// Smallest singular value of the tall matrix whose normal matrix is M.
double smallest_singular_value(const Mat2& m) {
    double tr = m.a + m.d;
    double det = m.a * m.d - m.b * m.c;
    double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    double lambda_min = std::max(0.0, (tr - disc) / 2.0);
    return std::sqrt(lambda_min);
}

bool solve2x2(const Mat2& m, double r0, double r1, double& x, double& y) {
    double det = m.a * m.d - m.b * m.c;
    if (det == 0.0) return false;
    x = (r0 * m.d - r1 * m.b) / det;
    y = (m.a * r1 - m.c * r0) / det;
    return true;
}

double range_cost(Vec2 p, const std::vector<Vec2>& anchors,
                  const std::vector<double>& dists) {
    double sum = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        double res = distance(p, anchors[i]) - dists[i];
        sum += res * res;
    }
    return sum;
}

// Under heavy range noise the residual surface grows extra local minima and
// the linearized solve can start the descent in the wrong basin. A coarse
// scan over the bounding box of the measured circles supplies a second,
// globally informed start.
Vec2 coarse_seed(const std::vector<Vec2>& anchors, const std::vector<double>& dists) {
    double lo_x = anchors[0].x, hi_x = anchors[0].x;
    double lo_y = anchors[0].y, hi_y = anchors[0].y;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        lo_x = std::min(lo_x, anchors[i].x - dists[i]);
        hi_x = std::max(hi_x, anchors[i].x + dists[i]);
        lo_y = std::min(lo_y, anchors[i].y - dists[i]);
        hi_y = std::max(hi_y, anchors[i].y + dists[i]);
    }
    double step = std::max(std::max(hi_x - lo_x, hi_y - lo_y) / 40.0, 0.25);
    Vec2 best{(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0};
    double best_cost = range_cost(best, anchors, dists);
    for (double y = lo_y; y <= hi_y + step / 2.0; y += step) {
        for (double x = lo_x; x <= hi_x + step / 2.0; x += step) {
            double cost = range_cost({x, y}, anchors, dists);
            if (cost < best_cost) {
                best_cost = cost;
                best = {x, y};
            }
        }
    }
    return best;
}

// Polish an estimate by Gauss-Newton on the range residuals
// sum_i (|p - a_i| - d_i)^2.
Vec2 refine(Vec2 p, const std::vector<Vec2>& anchors, const std::vector<double>& dists) {
    for (int iter = 0; iter < 20; ++iter) {
        Mat2 jtj;
        double g0 = 0, g1 = 0;
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            Vec2 delta = p - anchors[i];
            double r = norm(delta);
            if (r < 1e-12) continue;  // sitting on an anchor, gradient undefined
            double res = r - dists[i];
            double jx = delta.x / r, jy = delta.y / r;
            jtj.a += jx * jx;
            jtj.b += jx * jy;
            jtj.c += jx * jy;
            jtj.d += jy * jy;
            g0 += jx * res;
            g1 += jy * res;
        }
        double sx, sy;
        if (!solve2x2(jtj, -g0, -g1, sx, sy)) break;
        p = {p.x + sx, p.y + sy};
        if (sx * sx + sy * sy < 1e-24) break;
    }
    return p;
}

}  // namespace

TrilaterationResult trilaterate(const std::vector<Vec2>& anchors,
                                const std::vector<double>& dists) {
    if (anchors.size() != dists.size())
        throw std::invalid_argument("trilaterate: anchors/distances size mismatch");
    if (anchors.size() < 3)
        return {std::nullopt, LocalizationFailure::InsufficientCoverage};

    // Difference-of-circles linearization against the last anchor:
    //   2(x_i - x_r) x + 2(y_i - y_r) y
    //     = x_i^2 - x_r^2 + y_i^2 - y_r^2 + d_r^2 - d_i^2
    const Vec2 ref = anchors.back();
    const double dr = dists.back();
    Mat2 m;
    double r0 = 0, r1 = 0;
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        double ax = 2.0 * (anchors[i].x - ref.x);
        double ay = 2.0 * (anchors[i].y - ref.y);
        double b = anchors[i].x * anchors[i].x - ref.x * ref.x +
                   anchors[i].y * anchors[i].y - ref.y * ref.y + dr * dr -
                   dists[i] * dists[i];
        m.a += ax * ax;
        m.b += ax * ay;
        m.c += ax * ay;
        m.d += ay * ay;
        r0 += ax * b;
        r1 += ay * b;
    }

    if (smallest_singular_value(m) < kDegeneracySingularValue)
        return {std::nullopt, LocalizationFailure::DegenerateGeometry};

    double x, y;
    if (!solve2x2(m, r0, r1, x, y))
        return {std::nullopt, LocalizationFailure::DegenerateGeometry};

    Vec2 from_linear = refine({x, y}, anchors, dists);
    Vec2 from_scan = refine(coarse_seed(anchors, dists), anchors, dists);
    bool linear_wins = range_cost(from_linear, anchors, dists) <=
                       range_cost(from_scan, anchors, dists);
    return {linear_wins ? from_linear : from_scan, std::nullopt};
}

TrilaterationResult localize_target(TargetState& target,
                                    const std::vector<Vec2>& reference_positions,
                                    const ChannelParams& channel, RngStream& channel_rng) {
    std::vector<double> est_dists;
    est_dists.reserve(reference_positions.size());
    for (const Vec2& ref_pos : reference_positions) {
        // A target sitting exactly on a reference has unbounded RSS under the
        // log-distance model; clamp to 1 mm.
        double d = std::max(distance(target.true_position, ref_pos), 1e-3);
        std::optional<double> draw;
        if (channel.noise_sigma_db > 0.0) draw = channel_rng.standard_normal();
        double rss = rss_at_distance(d, channel, draw);
        est_dists.push_back(distance_from_rss(rss, channel));
    }

    TrilaterationResult result = trilaterate(reference_positions, est_dists);
    if (result.ok()) target.estimated_position = result.position;
    return result;
}

}  // namespace wsntrack
