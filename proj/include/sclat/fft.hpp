#pragma once

#include "sclat/lattice.hpp"

#include <cstddef>
#include <vector>

/// Thin wrapper over FFTW for the model's n-dimensional M×…×M transforms.
/// Plans are cached per shape; plan creation is serialized internally, so
/// the functions are safe to call from several threads.
namespace sclat::fft {

/// forward: Σ e^{−2πi d·t/M} x_d, backward: Σ e^{+2πi d·t/M} x_d (both unnormalized).
enum class Direction { forward, backward };

/// In-place batched transform. Batch b starts at data + b·dist and its
/// elements are `stride` apart.
void transform(cplx* data, int n, int M, std::size_t howmany, std::size_t stride, std::size_t dist,
               Direction dir);

/// Transform each contiguous block of Mⁿ entries of a [rows][Mⁿ] table.
void rows(std::vector<cplx>& table, const LatticeModel& model, Direction dir);
/// Transform along the first index of a [Mⁿ][cols] table, for every column.
void columns(std::vector<cplx>& table, const LatticeModel& model, std::size_t cols, Direction dir);

} // namespace sclat::fft
