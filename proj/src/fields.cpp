#include "vdl/fields.hpp"

#include <cmath>
#include <iostream>

namespace vdl {

void warn(const std::string& message) { std::cerr << "warning: " << message << "\n"; }

void check_finite(const ScalarField& f, const char* what) {
    for (double x : f.v)
        if (!std::isfinite(x)) throw invalid_field_error(std::string(what) + ": non-finite entry");
}

void check_finite(const VectorField& f, const char* what) {
    for (const auto& comp : f.c)
        for (double x : comp)
            if (!std::isfinite(x)) throw invalid_field_error(std::string(what) + ": non-finite entry");
}

double lp_norm(const ScalarField& f, double r) {
    if (!(r > 0.0)) throw domain_error("lp_norm: r must be positive");
    check_finite(f, "lp_norm");
    double s = 0.0;
    for (double x : f.v) s += std::pow(std::abs(x), r);
    return std::pow(s * f.grid.cell_vol(), 1.0 / r);
}

double lp_norm(const VectorField& f, double r) {
    if (!(r > 0.0)) throw domain_error("lp_norm: r must be positive");
    check_finite(f, "lp_norm");
    double s = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) s += std::pow(f.magnitude_at(i), r);
    return std::pow(s * f.grid.cell_vol(), 1.0 / r);
}

double linf_norm(const ScalarField& f) {
    check_finite(f, "linf_norm");
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double linf_norm(const VectorField& f) {
    check_finite(f, "linf_norm");
    double m = 0.0;
    for (std::size_t i = 0; i < f.grid.size(); ++i) m = std::max(m, f.magnitude_at(i));
    return m;
}

double integral(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s * f.grid.cell_vol();
}

} // namespace vdl
