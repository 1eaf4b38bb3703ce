#pragma once

namespace fblab {

// Blow-down coefficient of the gamma = 1 paraboloid solution, the shared
// reference for gamma matching.  Generated by the fblab_alpha_ref tool:
// matching_functional of u - x1^2/2 at radii 50/100/200 (n_angular = 1024,
// potential abs_tol = 1e-8), Richardson-extrapolated in r^{-1/2} over the
// {100, 200} pair.  Regenerate with the tool and bump the tag whenever the
// quadrature defaults change.
inline constexpr double kAlphaOneReference = 1.1814756549647041;  // alpha-ref-v1
inline constexpr const char* kAlphaOneReferenceTag = "alpha-ref-v1";

}  // namespace fblab
