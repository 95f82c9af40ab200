#include "qemb/linalg.hpp"

#include <algorithm>

namespace qemb::linalg {

Mat4 invert(const Mat4& m) {
    std::array<std::array<Rat, 8>, 4> w;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            w[i][j] = m[i][j];
            w[i][4 + j] = (i == j) ? 1 : 0;
        }
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r) {
            if (w[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) throw Error("invert: singular matrix");
        std::swap(w[col], w[piv]);
        Rat inv = 1 / w[col][col];
        for (int j = 0; j < 8; ++j) w[col][j] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || w[r][col] == 0) continue;
            Rat f = w[r][col];
            for (int j = 0; j < 8; ++j) w[r][j] -= f * w[col][j];
        }
    }
    Mat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = w[i][4 + j];
    return out;
}

Vec4 row_times(const Vec4& v, const Mat4& m) {
    Vec4 out{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) out[j] += v[i] * m[i][j];
    return out;
}

std::vector<std::vector<Int>> integer_kernel(const std::vector<std::vector<Int>>& m) {
    size_t rows = m.size();
    if (rows == 0) throw Error("integer_kernel: empty matrix");
    size_t n = m[0].size();
    std::vector<std::vector<Int>> a = m;  // column ops applied to a and u alike
    std::vector<std::vector<Int>> u(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto colsub = [&](size_t dst, size_t src, const Int& q) {
        for (size_t r = 0; r < rows; ++r) a[r][dst] -= q * a[r][src];
        for (size_t r = 0; r < n; ++r) u[r][dst] -= q * u[r][src];
    };
    auto colswap = [&](size_t x, size_t y) {
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][x], a[r][y]);
        for (size_t r = 0; r < n; ++r) std::swap(u[r][x], u[r][y]);
    };
    size_t frontier = 0;
    for (size_t i = 0; i < rows && frontier < n; ++i) {
        while (true) {
            size_t best = n;
            for (size_t j = frontier; j < n; ++j) {
                if (a[i][j] != 0 && (best == n || abs(a[i][j]) < abs(a[i][best]))) best = j;
            }
            if (best == n) break;  // row already zero past frontier
            bool cleared = true;
            for (size_t j = frontier; j < n; ++j) {
                if (j == best || a[i][j] == 0) continue;
                Int q = floor_div(a[i][j], a[i][best]);
                colsub(j, best, q);
                if (a[i][j] != 0) cleared = false;
            }
            if (cleared) {
                colswap(frontier, best);
                ++frontier;
                break;
            }
        }
    }
    std::vector<std::vector<Int>> kernel;
    for (size_t j = frontier; j < n; ++j) {
        std::vector<Int> v(n);
        for (size_t r = 0; r < n; ++r) v[r] = u[r][j];
        kernel.push_back(std::move(v));
    }
    for (const auto& v : kernel) {
        for (size_t i = 0; i < rows; ++i) {
            Int s = 0;
            for (size_t j = 0; j < n; ++j) s += m[i][j] * v[j];
            if (s != 0) throw Error("integer_kernel: internal verification failed");
        }
    }
    return kernel;
}

std::vector<std::vector<Rat>> rational_kernel(const std::vector<std::vector<Rat>>& m) {
    size_t rows = m.size();
    size_t n = rows ? m[0].size() : 0;
    std::vector<std::vector<Rat>> a = m;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows; ++c) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i) {
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        Rat inv = 1 / a[r][c];
        for (size_t j = 0; j < n; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> kernel;
    for (size_t freec = 0; freec < n; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[freec] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][freec];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

std::vector<Rat> solve_square(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t i = c; i < n; ++i) {
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == n) throw Error("solve_square: singular system");
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        Rat inv = 1 / a[c][c];
        for (size_t j = 0; j < n; ++j) a[c][j] *= inv;
        b[c] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[c][j];
            b[i] -= f * b[c];
        }
    }
    return b;
}

}  // namespace qemb::linalg
