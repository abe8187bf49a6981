#pragma once

#include <Eigen/SVD>
#include <vector>

#include "r4curv/errors.hpp"
#include "r4curv/frame.hpp"

namespace r4curv {

struct SphereFit {
    Vec4 center = Vec4::Zero();
    double radius = 0.0;
    double rms = 0.0;       // root mean square of |x - c| - R over the cloud
    double condition = 0.0; // sigma_min / sigma_max of the design matrix
};

// Least-squares sphere through a point cloud. |x|^2 = 2<x,c> + (R^2 - |c|^2)
// is linear in (c, R^2 - |c|^2), so one SVD solve suffices; no iteration.
inline SphereFit fit_sphere(const std::vector<Vec4>& pts) {
    if (pts.size() < 6) throw DegenerateCloud("sphere fit needs at least 6 points");
    Eigen::MatrixXd M(pts.size(), 5);
    Eigen::VectorXd rhs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        M.row(i) << 2.0 * pts[i][0], 2.0 * pts[i][1], 2.0 * pts[i][2], 2.0 * pts[i][3], 1.0;
        rhs[i] = pts[i].squaredNorm();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()[0];
    double smin = svd.singularValues()[4];
    SphereFit f;
    f.condition = smax > 0.0 ? smin / smax : 0.0;
    if (f.condition < 1e-10)
        throw DegenerateCloud("point cloud does not determine a sphere");
    Eigen::VectorXd sol = svd.solve(rhs);
    f.center = Vec4(sol[0], sol[1], sol[2], sol[3]);
    double r2 = sol[4] + f.center.squaredNorm();
    if (r2 <= 0.0) throw DegenerateCloud("fitted radius is not real");
    f.radius = std::sqrt(r2);
    double acc = 0.0;
    for (const Vec4& p : pts) {
        double d = (p - f.center).norm() - f.radius;
        acc += d * d;
    }
    f.rms = std::sqrt(acc / pts.size());
    return f;
}

} // namespace r4curv
