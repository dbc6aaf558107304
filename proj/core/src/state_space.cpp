#include "robsyn/state_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <limits>

namespace robsyn {

StateSpace::StateSpace(Matrix a, Matrix b, Matrix c, Matrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("StateSpace: A must be square");
    }
    if (B.rows() != A.rows()) {
        throw std::invalid_argument("StateSpace: B must have n_x rows");
    }
    if (C.cols() != A.rows()) {
        throw std::invalid_argument("StateSpace: C must have n_x columns");
    }
    if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw std::invalid_argument("StateSpace: D must be n_y x n_u");
    }
}

StateSpace StateSpace::static_gain(const Matrix& d) {
    return StateSpace(Matrix::Zero(0, 0), Matrix::Zero(0, d.cols()), Matrix::Zero(d.rows(), 0), d);
}

StateSpace StateSpace::identity(int n) {
    return static_gain(Matrix::Identity(n, n));
}

ComplexMatrix freq_response(const StateSpace& sys, double omega) {
    if (!std::isfinite(omega) || omega < 0.0) {
        throw std::invalid_argument("freq_response: omega must be finite and >= 0");
    }
    const int n = sys.states();
    if (n == 0) {
        return sys.D.cast<Complex>();
    }
    ComplexMatrix m = -sys.A.cast<Complex>();
    m.diagonal().array() += Complex(0.0, omega);

    Eigen::FullPivLU<ComplexMatrix> lu(m);
    const double pivot_max = lu.maxPivot();
    lu.setThreshold(1e-13);
    if (pivot_max <= 0.0 || !lu.isInvertible()) {
        throw std::runtime_error("freq_response: jw is an eigenvalue of A (pole on the imaginary axis)");
    }
    ComplexMatrix x = lu.solve(sys.B.cast<Complex>());
    return sys.C.cast<Complex>() * x + sys.D.cast<Complex>();
}

StabilityInfo is_hurwitz(const StateSpace& sys) {
    if (sys.states() == 0) {
        return {true, -std::numeric_limits<double>::infinity()};
    }
    Eigen::EigenSolver<Matrix> es(sys.A, /*computeEigenvectors=*/false);
    const double abscissa = es.eigenvalues().real().maxCoeff();
    return {abscissa < 0.0, abscissa};
}

StateSpace series(const StateSpace& g1, const StateSpace& g2) {
    if (g2.inputs() != g1.outputs()) {
        throw std::invalid_argument("series: g2 inputs must match g1 outputs");
    }
    const int n1 = g1.states(), n2 = g2.states();
    const int m = g1.inputs(), p = g2.outputs();

    Matrix A = Matrix::Zero(n1 + n2, n1 + n2);
    A.topLeftCorner(n1, n1) = g1.A;
    A.bottomLeftCorner(n2, n1) = g2.B * g1.C;
    A.bottomRightCorner(n2, n2) = g2.A;

    Matrix B = Matrix::Zero(n1 + n2, m);
    B.topRows(n1) = g1.B;
    B.bottomRows(n2) = g2.B * g1.D;

    Matrix C = Matrix::Zero(p, n1 + n2);
    C.leftCols(n1) = g2.D * g1.C;
    C.rightCols(n2) = g2.C;

    return StateSpace(std::move(A), std::move(B), std::move(C), g2.D * g1.D);
}

StateSpace parallel(const StateSpace& g1, const StateSpace& g2) {
    if (g1.inputs() != g2.inputs() || g1.outputs() != g2.outputs()) {
        throw std::invalid_argument("parallel: dimension mismatch");
    }
    const int n1 = g1.states(), n2 = g2.states();
    Matrix A = Matrix::Zero(n1 + n2, n1 + n2);
    A.topLeftCorner(n1, n1) = g1.A;
    A.bottomRightCorner(n2, n2) = g2.A;

    Matrix B(n1 + n2, g1.inputs());
    B.topRows(n1) = g1.B;
    B.bottomRows(n2) = g2.B;

    Matrix C(g1.outputs(), n1 + n2);
    C.leftCols(n1) = g1.C;
    C.rightCols(n2) = g2.C;

    return StateSpace(std::move(A), std::move(B), std::move(C), g1.D + g2.D);
}

StateSpace feedback(const StateSpace& fwd, const StateSpace& back) {
    const StateSpace& G = fwd;
    const StateSpace& H = back;
    if (H.inputs() != G.outputs() || H.outputs() != G.inputs()) {
        throw std::invalid_argument("feedback: loop dimensions mismatch");
    }
    const int nG = G.states(), nH = H.states();
    const int m = G.inputs(), p = G.outputs();

    // Closed map r -> y with y = G e, e = r - H y.
    Matrix Ip = Matrix::Identity(p, p) + G.D * H.D;
    Eigen::FullPivLU<Matrix> lu(Ip);
    if (!lu.isInvertible()) {
        throw std::runtime_error("feedback: algebraic loop, I + D_G D_H singular");
    }
    Matrix inv1 = lu.inverse();                                           // (I + DG DH)^{-1}
    Matrix inv2 = (Matrix::Identity(m, m) + H.D * G.D).fullPivLu().inverse();  // (I + DH DG)^{-1}

    Matrix A = Matrix::Zero(nG + nH, nG + nH);
    A.topLeftCorner(nG, nG) = G.A - G.B * inv2 * H.D * G.C;
    A.topRightCorner(nG, nH) = -G.B * inv2 * H.C;
    A.bottomLeftCorner(nH, nG) = H.B * inv1 * G.C;
    A.bottomRightCorner(nH, nH) = H.A - H.B * inv1 * G.D * H.C;

    Matrix B = Matrix::Zero(nG + nH, m);
    B.topRows(nG) = G.B * inv2;
    B.bottomRows(nH) = H.B * inv1 * G.D;

    Matrix C = Matrix::Zero(p, nG + nH);
    C.leftCols(nG) = inv1 * G.C;
    C.rightCols(nH) = -inv1 * G.D * H.C;

    return StateSpace(std::move(A), std::move(B), std::move(C), inv1 * G.D);
}

StateSpace interconnect(Interconnect kind, const StateSpace& g1, const StateSpace& g2) {
    switch (kind) {
        case Interconnect::Series:
            return series(g1, g2);
        case Interconnect::Parallel:
            return parallel(g1, g2);
        case Interconnect::Feedback:
            return feedback(g1, g2);
    }
    throw std::invalid_argument("interconnect: unknown kind");
}

StateSpace blkdiag(const std::vector<StateSpace>& systems) {
    int n = 0, m = 0, p = 0;
    for (const auto& s : systems) {
        n += s.states();
        m += s.inputs();
        p += s.outputs();
    }
    Matrix A = Matrix::Zero(n, n), B = Matrix::Zero(n, m);
    Matrix C = Matrix::Zero(p, n), D = Matrix::Zero(p, m);
    int in = 0, im = 0, ip = 0;
    for (const auto& s : systems) {
        A.block(in, in, s.states(), s.states()) = s.A;
        B.block(in, im, s.states(), s.inputs()) = s.B;
        C.block(ip, in, s.outputs(), s.states()) = s.C;
        D.block(ip, im, s.outputs(), s.inputs()) = s.D;
        in += s.states();
        im += s.inputs();
        ip += s.outputs();
    }
    return StateSpace(std::move(A), std::move(B), std::move(C), std::move(D));
}

StateSpace lft_lower(const StateSpace& p, const StateSpace& k, int n_meas, int n_ctrl) {
    const int nw = p.inputs() - n_ctrl;
    const int nz = p.outputs() - n_meas;
    if (n_meas <= 0 || n_ctrl <= 0 || nw < 0 || nz < 0) {
        throw std::invalid_argument("lft_lower: invalid channel partition");
    }
    if (k.inputs() != n_meas || k.outputs() != n_ctrl) {
        throw std::invalid_argument("lft_lower: controller dimensions must be n_meas -> n_ctrl");
    }
    const int n = p.states(), nk = k.states();

    Matrix B1 = p.B.leftCols(nw), B2 = p.B.rightCols(n_ctrl);
    Matrix C1 = p.C.topRows(nz), C2 = p.C.bottomRows(n_meas);
    Matrix D11 = p.D.topLeftCorner(nz, nw), D12 = p.D.topRightCorner(nz, n_ctrl);
    Matrix D21 = p.D.bottomLeftCorner(n_meas, nw), D22 = p.D.bottomRightCorner(n_meas, n_ctrl);

    // u = (I - Dk D22)^{-1} (Ck xk + Dk C2 x + Dk D21 w)
    Matrix R = Matrix::Identity(n_ctrl, n_ctrl) - k.D * D22;
    Eigen::FullPivLU<Matrix> lu(R);
    if (!lu.isInvertible()) {
        throw std::runtime_error("lft_lower: ill-posed interconnection, I - Dk D22 singular");
    }
    Matrix Ri = lu.inverse();

    Matrix Ux = Ri * k.D * C2;   // u from plant state
    Matrix Uk = Ri * k.C;        // u from controller state
    Matrix Uw = Ri * k.D * D21;  // u from w

    Matrix A = Matrix::Zero(n + nk, n + nk);
    A.topLeftCorner(n, n) = p.A + B2 * Ux;
    A.topRightCorner(n, nk) = B2 * Uk;
    A.bottomLeftCorner(nk, n) = k.B * (C2 + D22 * Ux);
    A.bottomRightCorner(nk, nk) = k.A + k.B * D22 * Uk;

    Matrix B = Matrix::Zero(n + nk, nw);
    B.topRows(n) = B1 + B2 * Uw;
    B.bottomRows(nk) = k.B * (D21 + D22 * Uw);

    Matrix C = Matrix::Zero(nz, n + nk);
    C.leftCols(n) = C1 + D12 * Ux;
    C.rightCols(nk) = D12 * Uk;

    Matrix D = D11 + D12 * Uw;

    return StateSpace(std::move(A), std::move(B), std::move(C), std::move(D));
}

ComplexMatrix close_upper(const ComplexMatrix& m, const ComplexMatrix& delta, int n_v, int n_d) {
    if (n_v > m.rows() || n_d > m.cols()) {
        throw std::invalid_argument("close_upper: partition exceeds matrix size");
    }
    if (delta.rows() != n_d || delta.cols() != n_v) {
        throw std::invalid_argument("close_upper: delta must map v-channels to d-channels");
    }
    const int p2 = static_cast<int>(m.rows()) - n_v;
    const int m2 = static_cast<int>(m.cols()) - n_d;

    ComplexMatrix M11 = m.topLeftCorner(n_v, n_d);
    ComplexMatrix M12 = m.topRightCorner(n_v, m2);
    ComplexMatrix M21 = m.bottomLeftCorner(p2, n_d);
    ComplexMatrix M22 = m.bottomRightCorner(p2, m2);

    ComplexMatrix I_minus = ComplexMatrix::Identity(n_v, n_v) - M11 * delta;
    Eigen::FullPivLU<ComplexMatrix> lu(I_minus);
    if (!lu.isInvertible()) {
        throw std::runtime_error("close_upper: singular I - M11*Delta (mu-critical uncertainty)");
    }
    return M22 + M21 * delta * lu.solve(M12);
}

ComplexMatrix lft_upper(const StateSpace& p, const ComplexMatrix& delta, double omega) {
    ComplexMatrix m = freq_response(p, omega);
    return close_upper(m, delta, static_cast<int>(delta.cols()), static_cast<int>(delta.rows()));
}

double sigma_max(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

double sigma_max(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

}  // namespace robsyn
