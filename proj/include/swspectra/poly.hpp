#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sw {

// Univariate real polynomial in a named spectral parameter.
//
// Every structure constant of the quadratic symmetry algebras is a (low-degree)
// polynomial in the spectral parameter -- the quasi-energy for the
// quasi-Hamiltonian algebras, the relativistic energy for the Dirac-side ones.
// Coefficients are stored constant term first.
class EnergyPolynomial {
public:
    EnergyPolynomial() = default;

    explicit EnergyPolynomial(std::vector<double> coeffs, std::string var = "Etilde")
        : coeffs_(std::move(coeffs)), var_(std::move(var)) {}

    static EnergyPolynomial constant(double value, std::string var = "Etilde") {
        return EnergyPolynomial(std::vector<double>{value}, std::move(var));
    }

    // Horner evaluation; finite for any finite argument and coefficients.
    double operator()(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = acc * x + coeffs_[i];
        return acc;
    }

    // Degree after trailing-zero trimming; the zero polynomial has degree -1.
    int degree() const {
        std::size_t n = coeffs_.size();
        while (n > 0 && coeffs_[n - 1] == 0.0) --n;
        return static_cast<int>(n) - 1;
    }

    bool is_zero() const { return degree() < 0; }

    // Drop exact trailing zero coefficients.
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    }

    const std::vector<double>& coefficients() const { return coeffs_; }
    const std::string& indeterminate() const { return var_; }

    // Coefficient of x^i (0 beyond the stored range).
    double coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }

    EnergyPolynomial& operator+=(const EnergyPolynomial& o) {
        require_same_var(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    EnergyPolynomial& operator-=(const EnergyPolynomial& o) {
        require_same_var(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    EnergyPolynomial& operator*=(double s) {
        for (double& c : coeffs_) c *= s;
        return *this;
    }

    friend EnergyPolynomial operator+(EnergyPolynomial a, const EnergyPolynomial& b) {
        a += b;
        return a;
    }
    friend EnergyPolynomial operator-(EnergyPolynomial a, const EnergyPolynomial& b) {
        a -= b;
        return a;
    }
    friend EnergyPolynomial operator*(EnergyPolynomial a, double s) {
        a *= s;
        return a;
    }
    friend EnergyPolynomial operator*(double s, EnergyPolynomial a) {
        a *= s;
        return a;
    }
    friend EnergyPolynomial operator-(EnergyPolynomial a) {
        a *= -1.0;
        return a;
    }

    friend EnergyPolynomial operator*(const EnergyPolynomial& a, const EnergyPolynomial& b) {
        a.require_same_var(b);
        if (a.coeffs_.empty() || b.coeffs_.empty())
            return EnergyPolynomial({}, a.var_);
        std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return EnergyPolynomial(std::move(c), a.var_);
    }

    friend bool operator==(const EnergyPolynomial& a, const EnergyPolynomial& b) {
        if (a.var_ != b.var_) return false;
        std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.coeff(i) != b.coeff(i)) return false;
        return true;
    }

private:
    void require_same_var(const EnergyPolynomial& o) const {
        // A default-constructed (empty) polynomial adapts to any indeterminate.
        if (!coeffs_.empty() && !o.coeffs_.empty() && var_ != o.var_)
            throw std::invalid_argument("polynomial indeterminate mismatch: '" + var_ +
                                        "' vs '" + o.var_ + "'");
    }

    std::vector<double> coeffs_;
    std::string var_ = "Etilde";
};

} // namespace sw
