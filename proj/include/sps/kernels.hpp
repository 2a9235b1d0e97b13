#pragma once

#include <cstdint>

#include "sps/common.hpp"

namespace sps::kern {

// OpenMP-parallel kernels for the hot inner loops. Reductions use a fixed
// 1024-element blocking: block partial sums are computed independently (in
// parallel) and combined in block order, so every result is bit-identical for
// any thread count, including one. tests/ compares each kernel against the
// plain serial twins in sps/reference.hpp.

inline constexpr std::size_t kReduceBlock = 1024;
// Below this size a parallel region costs more than it saves.
inline constexpr std::size_t kParallelCutoff = 1u << 13;

/// out = x - step * drift. Shared by both solvers so their forward points are
/// bit-identical when the inputs are.
void forward_point(const Vec& x, double step, const Vec& drift, Vec& out);

/// x <- x + lambda * (cand - x); lambda == 1 copies cand exactly.
void relax_update(Vec& x, double lambda, const Vec& cand);

void add(Vec& y, const Vec& x);             // y += x
void add_scaled(Vec& y, double a, const Vec& x);  // y += a * x
void sub(const Vec& a, const Vec& b, Vec& out);   // out = a - b
void scale(Vec& x, double a);

void clamp(const Vec& x, double lo, double hi, Vec& out);
void clamp_inplace(Vec& x, double lo, double hi);

/// Blocked dot product (fixed reduction order).
double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& x);
double norm(const Vec& x);
/// Blocked squared distance ||a - b||^2.
double dist_sq(const Vec& a, const Vec& b);

bool all_finite(const Vec& x);

/// Per-group soft shrinkage on a stacked-plane layout: component j of group i
/// lives at j*num_groups + i. Groups with norm <= threshold collapse to zero.
void group_shrink(const Vec& x, int group_size, double threshold, Vec& out);

/// Per-group projection onto the Euclidean ball of the given radius, same
/// layout as group_shrink.
void group_ball_project(const Vec& x, int group_size, double radius, Vec& out);

/// Forward-difference gradient with replicate boundary: two stacked planes
/// (horizontal then vertical), each width*height.
void grad_forward(const Vec& x, int width, int height, Vec& out);
/// Exact adjoint of grad_forward.
void grad_adjoint(const Vec& y, int width, int height, Vec& out);

/// out[i] = N(0,1) draw i of the stream `seed`; random-access counter RNG.
void gaussian_field(std::uint64_t seed, std::size_t n, Vec& out);

// Complex spectrum helpers for the DFT-domain operators.
void spectrum_multiply(const CVec& response, const CVec& in, CVec& out);
void spectrum_multiply_conj(const CVec& response, const CVec& in, CVec& out);
void spectrum_scale(CVec& x, double a);

}  // namespace sps::kern
