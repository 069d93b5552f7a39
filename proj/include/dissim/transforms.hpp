#pragma once

#include <complex>
#include <utility>

#include "dissim/image.hpp"

namespace dissim {

enum class TransformKind { none, gradient_magnitude, laplacian, riesz_magnitude };

/// sqrt(gx^2 + gy^2) from central differences (f(x+1)-f(x-1))/2; border
/// pixels use one-sided differences. Requires width, height >= 3.
Image gradient_magnitude(const Image& img);

/// 5-point stencil f(x+1,y)+f(x-1,y)+f(x,y+1)+f(x,y-1)-4f(x,y); border
/// pixels are 0. Requires width, height >= 3.
Image laplacian(const Image& img);

/// Frequency multipliers of the 2-D Riesz transform at signed integer
/// frequencies (u, v): H1 = -i*u/sqrt(u^2+v^2), H2 = -i*v/sqrt(u^2+v^2),
/// zero at DC. Off DC, |H1|^2 + |H2|^2 = 1 (neutral magnitude response).
struct RieszMultiplier {
    std::complex<double> h1;
    std::complex<double> h2;
};
RieszMultiplier riesz_multiplier(int u, int v);

/// The two real Riesz components, computed via 2-D DFT. Nyquist rows and
/// columns of even-sized grids are zeroed so the outputs are exactly
/// real. Requires width, height >= 2.
std::pair<Image, Image> riesz_pair(const Image& img);

/// Pointwise magnitude sqrt(r1^2 + r2^2) of the Riesz component pair.
Image riesz_magnitude(const Image& img);

Image apply_transform(TransformKind kind, const Image& img);

}  // namespace dissim
