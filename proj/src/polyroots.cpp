#include "sepcov/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "sepcov/errors.hpp"

namespace sepcov {

namespace {
constexpr double kTrimRatio = 1e-14;

Complex horner(const std::vector<Complex>& cs, Complex x) {
    Complex acc(0.0, 0.0);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Complex horner_derivative(const std::vector<Complex>& cs, Complex x) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = cs.size(); k-- > 1;)
        acc = acc * x + double(k) * cs[k];
    return acc;
}
}  // namespace

Complex polynomial_eval(const std::vector<Complex>& coeffs, Complex x) {
    return horner(coeffs, x);
}

double polynomial_residual_scale(const std::vector<Complex>& coeffs, Complex x) {
    double scale = 0.0;
    double pw = 1.0;
    const double ax = std::abs(x);
    for (const Complex& c : coeffs) {
        scale += std::abs(c) * pw;
        pw *= ax;
    }
    return scale;
}

std::vector<Complex> solve_polynomial(const std::vector<Complex>& coeffs) {
    double maxc = 0.0;
    for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) throw DegenerateError("solve_polynomial: all coefficients are zero");

    std::vector<Complex> cs = coeffs;
    while (!cs.empty() && std::abs(cs.back()) < kTrimRatio * maxc) cs.pop_back();
    if (cs.size() <= 1)
        throw DegenerateError("solve_polynomial: polynomial degenerates to a constant");

    const int deg = static_cast<int>(cs.size()) - 1;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -cs[i] / cs[deg];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);

    // Newton polish; keep the better iterate at every step.
    for (Complex& root : roots) {
        Complex x = root;
        double best = std::abs(horner(cs, x));
        for (int it = 0; it < 8 && best > 0.0; ++it) {
            const Complex d = horner_derivative(cs, x);
            if (d == Complex(0.0, 0.0)) break;
            const Complex next = x - horner(cs, x) / d;
            const double res = std::abs(horner(cs, next));
            if (res >= best) break;
            x = next;
            best = res;
        }
        root = x;
    }
    return roots;
}

}  // namespace sepcov
