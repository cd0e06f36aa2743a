#include "planeaut/linalg.hpp"

namespace pa {

std::vector<size_t> rref(Matrix& M, size_t cols)
{
    std::vector<size_t> piv;
    size_t row = 0;
    for (size_t c = 0; c < cols && row < M.size(); ++c) {
        size_t p = row;
        while (p < M.size() && M[p][c].is_zero()) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[row]);
        Scalar inv = M[row][c].inv();
        for (size_t j = c; j < M[row].size(); ++j)
            if (!M[row][j].is_zero()) M[row][j] *= inv;
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == row || M[i][c].is_zero()) continue;
            Scalar f = M[i][c];
            for (size_t j = c; j < M[row].size(); ++j)
                if (!M[row][j].is_zero()) M[i][j] -= f * M[row][j];
        }
        piv.push_back(c);
        ++row;
    }
    M.resize(row);
    return piv;
}

std::vector<std::vector<Scalar>> nullspace(Matrix M, size_t cols, const Field& f)
{
    auto piv = rref(M, cols);
    std::vector<bool> is_piv(cols, false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<Scalar>> out;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<Scalar> v(cols, Scalar::zero(f));
        v[fc] = Scalar::one(f);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M[i][fc];
        out.push_back(std::move(v));
    }
    return out;
}

bool solve_linear(Matrix M, const std::vector<Scalar>& b, size_t cols, std::vector<Scalar>& out)
{
    if (b.empty()) return false;
    const Field& f = b[0].field();
    for (size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
    auto piv = rref(M, cols + 1);
    if (!piv.empty() && piv.back() == cols) return false;
    out.assign(cols, Scalar::zero(f));
    for (size_t i = 0; i < piv.size(); ++i) out[piv[i]] = M[i][cols];
    return true;
}

}  // namespace pa
