#ifndef QEMB_LINALG_HPP
#define QEMB_LINALG_HPP

#include <array>
#include <vector>

#include "qemb/common.hpp"

namespace qemb::linalg {

using Vec4 = std::array<Rat, 4>;
using Mat4 = std::array<Vec4, 4>;

/* Gauss-Jordan inverse; throws on singular input. */
Mat4 invert(const Mat4& m);
/* Row vector times matrix. */
Vec4 row_times(const Vec4& v, const Mat4& m);

/* Basis of { x in Z^n : M x = 0 } for an integer matrix M (rows of equal length). */
std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& m);

/* General rational nullspace of an m x n matrix; returns a basis of row vectors. */
std::vector<std::vector<Rat>> rational_kernel(const std::vector<std::vector<Rat>>& m);

/* Exact solve of a square rational system A x = b via elimination; nullopt if singular
   or inconsistent handled by caller. */
std::vector<Rat> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

}  // namespace qemb::linalg

#endif
