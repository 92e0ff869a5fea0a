#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace schrodg {

using Complex = std::complex<double>;

/// Elementwise evaluator: (element id, x, t) -> value.
using ElementFunction = std::function<Complex(std::size_t, double, double)>;

/// Piecewise smooth space-time field with one-sided traces on every facet.
/// `dx` is the spatial derivative taken from the given element.
struct PiecewiseField
{
  ElementFunction value;
  ElementFunction dx;
};

/// Field continuous across elements, from global closed forms.
PiecewiseField global_field(std::function<Complex(double, double)> value,
                            std::function<Complex(double, double)> dx);

PiecewiseField constant_field(Complex c);

/// a - b, evaluated trace by trace.
PiecewiseField difference(PiecewiseField a, PiecewiseField b);

PiecewiseField scaled(Complex c, PiecewiseField a);

}  // namespace schrodg
