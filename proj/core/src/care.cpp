#include "robsyn/care.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

namespace robsyn {

namespace {

// Swaps the diagonal entries k and k+1 of a complex Schur form T in place,
// accumulating the unitary transform into U (so U T U^* stays invariant).
// Parlett-Reinsch balancing with radix-2 scale factors: H <- D^{-1} H D.
// Returns the diagonal of D.  Eigenvalues are untouched; invariant-subspace
// bases transform by D.
Vector balance_in_place(Matrix& H) {
    const int n = static_cast<int>(H.rows());
    Vector d = Vector::Ones(n);
    bool changed = true;
    int sweeps = 0;
    while (changed && sweeps++ < 50) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            double c = H.col(i).cwiseAbs().sum() - std::abs(H(i, i));
            double r = H.row(i).cwiseAbs().sum() - std::abs(H(i, i));
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s) {
                d(i) *= f;
                H.col(i) *= f;
                H.row(i) /= f;
                changed = true;
            }
        }
    }
    return d;
}

void swap_schur_diagonal(ComplexMatrix& T, ComplexMatrix& U, int k) {
    const Complex a = T(k, k);
    const Complex b = T(k, k + 1);
    const Complex d = T(k + 1, k + 1);

    // Eigenvector of [[a, b], [0, d]] for eigenvalue d is [b; d - a].
    const double nrm = std::hypot(std::abs(b), std::abs(d - a));
    if (nrm < 1e-300) return;  // equal eigenvalues, nothing to reorder

    const Complex c1 = b / nrm;
    const Complex s1 = (d - a) / nrm;

    Eigen::Matrix2cd G;
    G << c1, -std::conj(s1), s1, std::conj(c1);

    T.middleCols(k, 2) = T.middleCols(k, 2) * G;
    T.middleRows(k, 2) = G.adjoint() * T.middleRows(k, 2);
    U.middleCols(k, 2) = U.middleCols(k, 2) * G;
    T(k + 1, k) = Complex(0.0, 0.0);
}

}  // namespace

CareProblem::CareProblem(Matrix a, Matrix b, Matrix q, Matrix r, Matrix s)
    : A(std::move(a)), B(std::move(b)), Q(std::move(q)), R(std::move(r)), S(std::move(s)) {
    const auto n = A.rows();
    const auto m = B.cols();
    if (A.rows() != A.cols() || B.rows() != n || Q.rows() != n || Q.cols() != n ||
        R.rows() != m || R.cols() != m) {
        throw std::invalid_argument("CareProblem: dimension mismatch");
    }
    if (S.size() == 0) {
        S = Matrix::Zero(n, m);
    } else if (S.rows() != n || S.cols() != m) {
        throw std::invalid_argument("CareProblem: cross term S must be n x m");
    }
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("CareProblem: Q must be symmetric");
    }
    if ((R - R.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + R.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("CareProblem: R must be symmetric");
    }
}

Matrix riccati_stabilizing(const Matrix& A, const Matrix& B, const Matrix& Q,
                           const Matrix& R, const Matrix& S) {
    const int n = static_cast<int>(A.rows());
    if (n == 0) return Matrix::Zero(0, 0);

    Eigen::FullPivLU<Matrix> lur(R);
    if (!lur.isInvertible()) {
        throw std::runtime_error("riccati_stabilizing: R is singular");
    }
    const Matrix RiBt = lur.solve(B.transpose());   // R^{-1} B'
    const Matrix RiSt = lur.solve(S.transpose());   // R^{-1} S'
    const Matrix As = A - B * RiSt;                 // A - B R^{-1} S'
    const Matrix Qs = Q - S * RiSt;                 // Q - S R^{-1} S'

    Matrix H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = As;
    H.topRightCorner(n, n) = -B * RiBt;
    H.bottomLeftCorner(n, n) = -Qs;
    H.bottomRightCorner(n, n) = -As.transpose();

    const Vector bal = balance_in_place(H);

    Eigen::ComplexSchur<ComplexMatrix> schur(H.cast<Complex>(), /*computeU=*/true);
    if (schur.info() != Eigen::Success) {
        throw std::runtime_error("riccati_stabilizing: Schur decomposition failed");
    }
    ComplexMatrix T = schur.matrixT();
    ComplexMatrix U = schur.matrixU();

    int n_stable = 0;
    for (int i = 0; i < 2 * n; ++i) {
        const Complex lam = T(i, i);
        // Axis contact measured relative to the eigenvalue magnitude; a
        // norm-of-H scale would drown real eigenvalues whenever the
        // regularized R^{-1} blows up single entries.
        if (std::abs(lam.real()) <= 1e-8 * std::max(1.0, std::abs(lam))) {
            throw std::runtime_error(
                "riccati_stabilizing: Hamiltonian eigenvalue on the imaginary axis, no stabilizing solution");
        }
        if (lam.real() < 0.0) ++n_stable;
    }
    if (n_stable != n) {
        throw std::runtime_error("riccati_stabilizing: stable subspace has wrong dimension");
    }

    // Selection sort on the Schur diagonal: move stable eigenvalues to the
    // leading positions with adjacent unitary swaps.
    for (int target = 0; target < n; ++target) {
        if (T(target, target).real() < 0.0) continue;
        int src = -1;
        for (int j = target + 1; j < 2 * n; ++j) {
            if (T(j, j).real() < 0.0) {
                src = j;
                break;
            }
        }
        if (src < 0) {
            throw std::runtime_error("riccati_stabilizing: reordering failed");
        }
        for (int j = src; j > target; --j) {
            swap_schur_diagonal(T, U, j - 1);
        }
    }

    // Undo balancing: the subspace basis of the original H is D * U.
    const ComplexMatrix U1 = bal.head(n).asDiagonal() * U.topLeftCorner(n, n);
    const ComplexMatrix U2 = bal.tail(n).asDiagonal() * U.bottomLeftCorner(n, n);

    Eigen::FullPivLU<ComplexMatrix> lu1(U1);
    if (!lu1.isInvertible()) {
        throw std::runtime_error("riccati_stabilizing: singular U1 block, no solution");
    }
    const ComplexMatrix Xc = U2 * lu1.inverse();  // X = U2 U1^{-1}
    Matrix X = Xc.real();
    X = 0.5 * (X + X.transpose().eval());
    return X;
}

Matrix solve_care(const CareProblem& p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.R);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("solve_care: R must be positive definite");
    }

    Matrix X = riccati_stabilizing(p.A, p.B, p.Q, p.R, p.S);

    const double res = care_residual(p, X);
    if (!(res <= 1e-8 * (1.0 + X.norm()))) {
        throw std::runtime_error("solve_care: residual check failed, res = " + std::to_string(res));
    }

    // Stabilizing-solution check: A - B R^{-1} (B'X + S') must be Hurwitz.
    const Matrix K = p.R.fullPivLu().solve(p.B.transpose() * X + p.S.transpose());
    const Matrix Acl = p.A - p.B * K;
    if (Acl.rows() > 0) {
        Eigen::EigenSolver<Matrix> ecl(Acl, false);
        if (ecl.eigenvalues().real().maxCoeff() >= 0.0) {
            throw std::runtime_error("solve_care: computed solution is not stabilizing");
        }
    }
    return X;
}

double care_residual(const CareProblem& p, const Matrix& X) {
    const Matrix G = p.B.transpose() * X + p.S.transpose();
    const Matrix res = p.A.transpose() * X + X * p.A - (X * p.B + p.S) * p.R.fullPivLu().solve(G) + p.Q;
    return res.norm();
}

}  // namespace robsyn
