#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <optional>

#include "robsyn/care.hpp"
#include "robsyn/hinf.hpp"

namespace robsyn {

namespace {

struct PlantParts {
    Matrix A, B1, B2, C1, C2, D11, D12, D21, D22;
    int n, m1, m2, p1, p2;
};

PlantParts split_plant(const StateSpace& p, int n_meas, int n_ctrl) {
    PlantParts q;
    q.n = p.states();
    q.m2 = n_ctrl;
    q.p2 = n_meas;
    q.m1 = p.inputs() - n_ctrl;
    q.p1 = p.outputs() - n_meas;
    if (n_meas <= 0 || n_ctrl <= 0 || q.m1 < 0 || q.p1 < 0) {
        throw std::invalid_argument("synthesize_hinf: invalid channel partition");
    }
    q.A = p.A;
    q.B1 = p.B.leftCols(q.m1);
    q.B2 = p.B.rightCols(q.m2);
    q.C1 = p.C.topRows(q.p1);
    q.C2 = p.C.bottomRows(q.p2);
    q.D11 = p.D.topLeftCorner(q.p1, q.m1);
    q.D12 = p.D.topRightCorner(q.p1, q.m2);
    q.D21 = p.D.bottomLeftCorner(q.p2, q.m1);
    q.D22 = p.D.bottomRightCorner(q.p2, q.m2);
    return q;
}

int matrix_rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const double thr = 1e-9 * std::max(1.0, svd.singularValues()(0));
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > thr) ++r;
    }
    return r;
}

// Pads rank-deficient feedthrough channels with epsilon identities so the
// normalized-form transformations exist.  Extra z rows carry eps*u, extra w
// columns feed eps into y.
PlantParts regularize(PlantParts q, double eps) {
    if (matrix_rank(q.D12) < q.m2) {
        Matrix C1(q.p1 + q.m2, q.n);
        C1 << q.C1, Matrix::Zero(q.m2, q.n);
        Matrix D11(q.p1 + q.m2, q.m1);
        D11 << q.D11, Matrix::Zero(q.m2, q.m1);
        Matrix D12(q.p1 + q.m2, q.m2);
        D12 << q.D12, eps * Matrix::Identity(q.m2, q.m2);
        q.C1 = std::move(C1);
        q.D11 = std::move(D11);
        q.D12 = std::move(D12);
        q.p1 += q.m2;
    }
    if (matrix_rank(q.D21) < q.p2) {
        Matrix B1(q.n, q.m1 + q.p2);
        B1 << q.B1, Matrix::Zero(q.n, q.p2);
        Matrix D11(q.p1, q.m1 + q.p2);
        D11 << q.D11, Matrix::Zero(q.p1, q.p2);
        Matrix D21(q.p2, q.m1 + q.p2);
        D21 << q.D21, eps * Matrix::Identity(q.p2, q.p2);
        q.B1 = std::move(B1);
        q.D11 = std::move(D11);
        q.D21 = std::move(D21);
        q.m1 += q.p2;
    }
    return q;
}

// Orthogonal/invertible channel transforms bringing D12 to [0; I] and D21 to
// [0, I].  The controller computed for the transformed plant maps back as
// K = Ru K~ Ly.
struct NormalizedPlant {
    PlantParts q;
    Matrix Ru, Ly;  // u = Ru u~,  y~ = Ly y
};

NormalizedPlant normalize_plant(const PlantParts& in) {
    NormalizedPlant np;
    PlantParts q = in;

    {
        Eigen::JacobiSVD<Matrix> svd(q.D12, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svd.singularValues().size() < q.m2 ||
            svd.singularValues()(q.m2 - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0))) {
            throw std::runtime_error("synthesize_hinf: D12 not full column rank after regularization");
        }
        Matrix Qz(q.p1, q.p1);
        Qz.leftCols(q.p1 - q.m2) = svd.matrixU().rightCols(q.p1 - q.m2);
        Qz.rightCols(q.m2) = svd.matrixU().leftCols(q.m2);
        const Matrix Ru =
            svd.matrixV() * svd.singularValues().head(q.m2).cwiseInverse().asDiagonal();

        q.C1 = (Qz.transpose() * q.C1).eval();
        q.D11 = (Qz.transpose() * q.D11).eval();
        q.D12 = (Qz.transpose() * q.D12 * Ru).eval();
        q.B2 = (q.B2 * Ru).eval();
        np.Ru = Ru;
    }
    {
        Eigen::JacobiSVD<Matrix> svd(q.D21, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svd.singularValues().size() < q.p2 ||
            svd.singularValues()(q.p2 - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0))) {
            throw std::runtime_error("synthesize_hinf: D21 not full row rank after regularization");
        }
        Matrix Qw(q.m1, q.m1);
        Qw.leftCols(q.m1 - q.p2) = svd.matrixV().rightCols(q.m1 - q.p2);
        Qw.rightCols(q.p2) = svd.matrixV().leftCols(q.p2);
        const Matrix Ly =
            svd.singularValues().head(q.p2).cwiseInverse().asDiagonal() * svd.matrixU().transpose();

        q.B1 = (q.B1 * Qw).eval();
        q.D11 = (q.D11 * Qw).eval();
        q.D21 = (Ly * q.D21 * Qw).eval();
        q.C2 = (Ly * q.C2).eval();
        np.Ly = Ly;
    }
    np.q = std::move(q);
    return np;
}

// Central controller of the suboptimal problem at level gamma for a plant in
// normalized form (D12 = [0; I], D21 = [0, I], D22 = 0); nullopt when gamma
// is infeasible.
std::optional<StateSpace> central_controller(const NormalizedPlant& np, double gamma) {
    const PlantParts& q = np.q;
    const int n = q.n, m1 = q.m1, m2 = q.m2, p1 = q.p1, p2 = q.p2;
    const double g2 = gamma * gamma;

    const Matrix D1111 = q.D11.topLeftCorner(p1 - m2, m1 - p2);
    const Matrix D1112 = q.D11.topRightCorner(p1 - m2, p2);
    const Matrix D1121 = q.D11.bottomLeftCorner(m2, m1 - p2);
    const Matrix D1122 = q.D11.bottomRightCorner(m2, p2);

    {
        Matrix top(p1 - m2, m1);
        top << D1111, D1112;
        Matrix left(p1, m1 - p2);
        left << D1111, D1121;
        if (gamma <= sigma_max(top) * (1.0 + 1e-9) || gamma <= sigma_max(left) * (1.0 + 1e-9)) {
            return std::nullopt;
        }
    }

    Matrix B(n, m1 + m2);
    B << q.B1, q.B2;
    Matrix C(p1 + p2, n);
    C << q.C1, q.C2;
    Matrix D1c(p1, m1 + m2);
    D1c << q.D11, q.D12;
    Matrix Dc1(p1 + p2, m1);
    Dc1 << q.D11, q.D21;

    Matrix R = D1c.transpose() * D1c;
    R.topLeftCorner(m1, m1) -= g2 * Matrix::Identity(m1, m1);
    Matrix Rt = Dc1 * Dc1.transpose();
    Rt.topLeftCorner(p1, p1) -= g2 * Matrix::Identity(p1, p1);

    Matrix X, Y;
    try {
        X = riccati_stabilizing(q.A, B, q.C1.transpose() * q.C1, R, q.C1.transpose() * D1c);
        Y = riccati_stabilizing(q.A.transpose(), C.transpose(), q.B1 * q.B1.transpose(), Rt,
                                q.B1 * Dc1.transpose());
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }

    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> ex(X), ey(Y);
        if (ex.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, X.norm()) ||
            ey.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, Y.norm())) {
            return std::nullopt;
        }
        Eigen::EigenSolver<Matrix> exy(X * Y, false);
        if (exy.eigenvalues().cwiseAbs().maxCoeff() >= g2 * (1.0 - 1e-9)) {
            return std::nullopt;
        }
    }

    const Matrix F = -R.fullPivLu().solve(D1c.transpose() * q.C1 + B.transpose() * X);
    const Matrix L = -(q.B1 * Dc1.transpose() + Y * C.transpose()) * Rt.fullPivLu().inverse();

    const Matrix F12 = F.middleRows(m1 - p2, p2);
    const Matrix F2 = F.bottomRows(m2);
    const Matrix L12 = L.middleCols(p1 - m2, m2);
    const Matrix L2 = L.rightCols(p2);

    Matrix Zi;
    if (n > 0) {
        const Matrix Z = Matrix::Identity(n, n) - Y * X / g2;
        Eigen::FullPivLU<Matrix> luz(Z);
        if (!luz.isInvertible()) return std::nullopt;
        Zi = luz.inverse();
    } else {
        Zi = Matrix::Zero(0, 0);
    }

    const Matrix W1 = g2 * Matrix::Identity(p1 - m2, p1 - m2) - D1111 * D1111.transpose();
    const Matrix Dk = -D1121 * D1111.transpose() * W1.fullPivLu().solve(D1112) - D1122;

    const Matrix Ck = F2 - Dk * (q.C2 + F12);
    const Matrix Bk = Zi * (-L2 + (q.B2 + L12) * Dk);
    const Matrix Ak = q.A + B * F - Bk * (q.C2 + F12);

    return StateSpace(Ak, Bk, Ck, Dk);
}

}  // namespace

HinfResult synthesize_hinf(const StateSpace& p, int n_meas, int n_ctrl, const HinfOptions& opts) {
    if (!(opts.gamma_lo > 0.0) || !(opts.gamma_hi > opts.gamma_lo)) {
        throw std::invalid_argument("synthesize_hinf: need 0 < gamma_lo < gamma_hi");
    }
    if (!(opts.tol > 0.0 && opts.tol <= 0.1)) {
        throw std::invalid_argument("synthesize_hinf: tol must lie in (0, 0.1]");
    }

    const PlantParts raw = split_plant(p, n_meas, n_ctrl);
    PlantParts design = regularize(raw, opts.reg_epsilon);
    const Matrix D22 = design.D22;
    design.D22 = Matrix::Zero(n_meas, n_ctrl);  // loop-shifted away, restored below

    const NormalizedPlant np = normalize_plant(design);

    // Builds and validates a controller at the given level; the closed loop
    // against the original plant must be internally stable.
    auto attempt = [&](double gamma) -> std::optional<StateSpace> {
        auto kt = central_controller(np, gamma);
        if (!kt) return std::nullopt;
        StateSpace k(kt->A, kt->B * np.Ly, np.Ru * kt->C, np.Ru * kt->D * np.Ly);
        if (!D22.isZero(0.0)) {
            try {
                k = feedback(k, StateSpace::static_gain(D22));
            } catch (const std::runtime_error&) {
                return std::nullopt;
            }
        }
        StateSpace cl;
        try {
            cl = lft_lower(p, k, n_meas, n_ctrl);
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
        if (!is_hurwitz(cl).hurwitz) return std::nullopt;
        return k;
    };

    // Feasibility ladder anchored at gamma_lo: doubles until feasible so the
    // refinement bracket does not depend on gamma_hi.
    int iters = 0;
    std::optional<StateSpace> k_best;
    double g_feas = 0.0, g_infeas = 0.0;
    double g = opts.gamma_lo;
    bool at_hi = false;
    while (true) {
        ++iters;
        if (auto k = attempt(g)) {
            k_best = std::move(k);
            g_feas = g;
            break;
        }
        g_infeas = g;
        if (at_hi || iters > 120) break;
        g *= 2.0;
        if (g >= opts.gamma_hi) {
            g = opts.gamma_hi;
            at_hi = true;
        }
    }
    if (!k_best) {
        throw InfeasibleError("synthesize_hinf: infeasible over the given gamma range");
    }

    if (g_infeas > 0.0) {
        double lo = g_infeas, hi = g_feas;
        while (hi / lo > 1.0 + opts.tol && iters < opts.max_bisection) {
            ++iters;
            const double mid = std::sqrt(lo * hi);
            if (auto k = attempt(mid)) {
                k_best = std::move(k);
                hi = mid;
            } else {
                lo = mid;
            }
        }
        g_feas = hi;
    }

    // The Riccati conditions can pass at a level the numerically built
    // controller does not quite deliver (ill-conditioned regularization);
    // report the certified closed-loop level instead of the bisected one.
    const StateSpace cl = lft_lower(p, *k_best, n_meas, n_ctrl);
    const double certified = hinf_norm(cl, 0.5 * std::min(opts.tol, 1e-3)).value;
    const double g_ret = std::max(g_feas, certified * (1.0 + 0.25 * opts.tol));

    return {*k_best, g_ret, iters};
}

}  // namespace robsyn
