#pragma once

#include <vector>

namespace mrs {

enum class DataKind { PointValue, CellAverage };

// beta: symmetric midpoint interpolation weights, beta[l-1] for l = 1..s (r = 2s).
// gamma: cell-average prediction weights, gamma[l-1] for l = 1..s-1 (rbar = 2s-1).
struct InterpCoefficients {
    DataKind kind = DataKind::PointValue;
    int order = 4;
    std::vector<double> beta;
    std::vector<double> gamma;
};

// r in {2, 4, 6}.
InterpCoefficients interp_coeffs(int r);
// rbar in {3, 5}.
InterpCoefficients cell_avg_coeffs(int rbar);
InterpCoefficients make_coeffs(DataKind kind, int order);

// Lagrange basis at x for the nodes 0, 1, ..., n-1.
std::vector<long double> lagrange_weights(int n, long double x);

}  // namespace mrs
