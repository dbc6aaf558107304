#pragma once

#include "robsyn/types.hpp"

namespace robsyn {

/// Continuous-time algebraic Riccati problem
///   A'X + XA - (XB + S) R^{-1} (B'X + S') + Q = 0
/// with Q symmetric, R symmetric positive-definite, S an optional cross term.
struct CareProblem {
    Matrix A;
    Matrix B;
    Matrix Q;
    Matrix R;
    Matrix S;  // n x m; empty means zero

    CareProblem(Matrix a, Matrix b, Matrix q, Matrix r, Matrix s = Matrix());
};

/// Stabilizing solution via the ordered Schur form of the 2n x 2n
/// Hamiltonian.  Throws if the Hamiltonian has eigenvalues on the imaginary
/// axis or the stable subspace does not yield a solution.
Matrix solve_care(const CareProblem& p);

/// Residual norm ||A'X + XA - (XB+S) R^{-1} (B'X+S') + Q||.
double care_residual(const CareProblem& p, const Matrix& X);

/// Core Hamiltonian-subspace solver used by solve_care and by the H-infinity
/// Riccati equations; R only needs to be symmetric and invertible here.
Matrix riccati_stabilizing(const Matrix& A, const Matrix& B, const Matrix& Q,
                           const Matrix& R, const Matrix& S);

}  // namespace robsyn
