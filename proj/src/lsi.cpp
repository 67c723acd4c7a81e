#include "lsi.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace spdval::math {

namespace {

Eigen::VectorXd solve_subset_ls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                const std::vector<int>& cols) {
    Eigen::MatrixXd Ap(A.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) Ap.col(j) = A.col(cols[j]);
    return Ap.colPivHouseholderQr().solve(b);
}

} // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    const int n = static_cast<int>(A.cols());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(n, false);
    std::vector<int> pset;

    const double wtol = 1e-12 * std::max(1.0, (A.transpose() * b).cwiseAbs().maxCoeff());
    const int max_outer = 3 * n + 30;

    for (int outer = 0; outer < max_outer; ++outer) {
        Eigen::VectorXd w = A.transpose() * (b - A * x);
        int jbest = -1;
        double wbest = wtol;
        for (int j = 0; j < n; ++j)
            if (!passive[j] && w[j] > wbest) { wbest = w[j]; jbest = j; }
        if (jbest < 0) break;
        passive[jbest] = true;
        pset.push_back(jbest);

        for (int inner = 0; inner < max_outer; ++inner) {
            Eigen::VectorXd z = solve_subset_ls(A, b, pset);
            bool all_pos = true;
            for (int i = 0; i < z.size(); ++i)
                if (z[i] <= 0.0) { all_pos = false; break; }
            if (all_pos) {
                for (std::size_t i = 0; i < pset.size(); ++i) x[pset[i]] = z[i];
                break;
            }
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pset.size(); ++i) {
                if (z[i] <= 0.0) {
                    const double xi = x[pset[i]];
                    alpha = std::min(alpha, xi / (xi - z[i]));
                }
            }
            for (std::size_t i = 0; i < pset.size(); ++i) {
                const int j = pset[i];
                x[j] += alpha * (z[i] - x[j]);
            }
            std::vector<int> keep;
            for (int j : pset) {
                if (x[j] <= 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
                    x[j] = 0.0;
                    passive[j] = false;
                } else {
                    keep.push_back(j);
                }
            }
            pset = std::move(keep);
            if (pset.empty()) break;
        }
    }
    return x;
}

bool ldp(const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x) {
    const int m = static_cast<int>(G.rows());
    const int n = static_cast<int>(G.cols());
    Eigen::MatrixXd E(n + 1, m);
    E.topRows(n) = G.transpose();
    E.bottomRows(1) = h.transpose();
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n + 1);
    f[n] = 1.0;

    Eigen::VectorXd u = nnls(E, f);
    Eigen::VectorXd r = E * u - f;
    const double rn = r.norm();
    if (rn < 1e-10) return false; // constraints incompatible
    x.resize(n);
    for (int j = 0; j < n; ++j) x[j] = -r[j] / r[n];
    return true;
}

bool lsi(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
         const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x) {
    const int n = static_cast<int>(A.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    Eigen::VectorXd qtb = (qr.householderQ().transpose() * b).head(n);

    // y = R x - qtb turns the objective into min ||y||.
    Eigen::MatrixXd GRinv = R.triangularView<Eigen::Upper>()
                                .solve<Eigen::OnTheRight>(G); // G R^{-1}
    Eigen::VectorXd hh = h - GRinv * qtb;
    Eigen::VectorXd y;
    if (!ldp(GRinv, hh, y)) return false;
    x = R.triangularView<Eigen::Upper>().solve(y + qtb);
    return true;
}

bool lsi_eq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
            const Eigen::MatrixXd& E, const Eigen::VectorXd& e,
            const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x) {
    const int n = static_cast<int>(A.cols());
    const int p = static_cast<int>(E.rows());
    if (p == 0) return lsi(A, b, G, h, x);

    // Full QR of E^T gives a particular solution and a nullspace basis.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(E.transpose());
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd R1 = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    Eigen::VectorXd w = R1.transpose().triangularView<Eigen::Lower>().solve(e);
    Eigen::VectorXd x0 = Q.leftCols(p) * w;
    Eigen::MatrixXd N = Q.rightCols(n - p);

    Eigen::VectorXd z;
    if (!lsi(A * N, b - A * x0, G * N, h - G * x0, z)) return false;
    x = x0 + N * z;
    return true;
}

} // namespace spdval::math
