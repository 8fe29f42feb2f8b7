#include "folia/ratmat.hpp"

namespace folia {

long rat_rank(RatMatrix m) {
    if (m.empty() || m[0].empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    // clear denominators row-wise, then run fraction-free elimination
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (size_t i = 0; i < rows; ++i) {
        Int den = 1;
        for (size_t j = 0; j < cols; ++j) den = lcm(den, m[i][j].get_den());
        for (size_t j = 0; j < cols; ++j) a[i][j] = Int(m[i][j] * den);
    }
    long rank = 0;
    size_t row = 0;
    Int prev = 1;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        for (size_t i = row + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                a[i][j] = a[row][col] * a[i][j] - a[i][col] * a[row][j];
                a[i][j] /= prev; // exact by the Bareiss identity
            }
            a[i][col] = 0;
        }
        prev = a[row][col];
        ++row;
        ++rank;
    }
    return rank;
}

Int int_det(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] /= prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace folia
