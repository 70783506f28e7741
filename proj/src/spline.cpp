#include "bifh/spline.hpp"

#include <Eigen/Sparse>
#include <algorithm>

#include "bifh/errors.hpp"

namespace bifh {

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<double> values)
    : t_(std::move(knots)), y_(std::move(values)) {
    const std::size_t n = t_.size();
    if (n != y_.size() || n < 4) throw DegenerateInput("spline needs >= 4 knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(t_[i] > t_[i - 1])) throw DegenerateInput("spline knots must be increasing");

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t_[i + 1] - t_[i];

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(n));

    // not-a-knot: third derivative continuous across t_1 and t_{n-2}
    trips.emplace_back(0, 0, h[1]);
    trips.emplace_back(0, 1, -(h[0] + h[1]));
    trips.emplace_back(0, 2, h[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i - 1), h[i - 1] / 6.0);
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i), (h[i - 1] + h[i]) / 3.0);
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i + 1), h[i] / 6.0);
        rhs[static_cast<long>(i)] =
            (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
    }
    trips.emplace_back(static_cast<int>(n - 1), static_cast<int>(n - 3), h[n - 2]);
    trips.emplace_back(static_cast<int>(n - 1), static_cast<int>(n - 2), -(h[n - 3] + h[n - 2]));
    trips.emplace_back(static_cast<int>(n - 1), static_cast<int>(n - 1), h[n - 3]);

    Eigen::SparseMatrix<double> A(static_cast<long>(n), static_cast<long>(n));
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(A);
    if (solver.info() != Eigen::Success) throw NumericalError("spline system factorization failed");
    Eigen::VectorXd m = solver.solve(rhs);
    m_.assign(m.data(), m.data() + n);
}

std::size_t CubicSpline::locate(double t) const {
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    if (i == 0) return 0;
    if (i >= t_.size()) return t_.size() - 2;
    return i - 1;
}

double CubicSpline::eval(double t, int derivative) const {
    const std::size_t i = locate(t);
    const double h = t_[i + 1] - t_[i];
    const double A = (t_[i + 1] - t) / h;
    const double B = (t - t_[i]) / h;
    switch (derivative) {
        case 0:
            return A * y_[i] + B * y_[i + 1] +
                   ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
        case 1:
            return (y_[i + 1] - y_[i]) / h - (3.0 * A * A - 1.0) * h * m_[i] / 6.0 +
                   (3.0 * B * B - 1.0) * h * m_[i + 1] / 6.0;
        case 2:
            return A * m_[i] + B * m_[i + 1];
        case 3:
            return (m_[i + 1] - m_[i]) / h;
        default:
            throw DomainError("spline derivative order out of range");
    }
}

Jet3 CubicSpline::jet(double t) const {
    return {eval(t, 0), eval(t, 1), eval(t, 2), eval(t, 3)};
}

}  // namespace bifh
