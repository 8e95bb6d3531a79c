#include "bulkedge/toeplitz.hpp"

namespace bulkedge {

std::vector<std::pair<Word, int>> word_product(const Word& x, const Word& y) {
    std::vector<std::pair<Word, int>> out;
    if (x.kind == Word::Iso && y.kind == Word::Iso) {
        long k = x.a, l = y.a;
        if (k > 0 && l < 0) {
            // St^k St*^b = St^{k-m} St*^{b-m} - sum_{j<m} St^{k-m+j} p St*^{b-m+j}
            long b = -l, m = std::min(k, b);
            out.push_back({Word::iso(k - b), 1});
            for (long j = 0; j < m; ++j) out.push_back({Word::corner(k - m + j, b - m + j), -1});
        } else {
            // same-sign powers add; St*^a St^l collapses by the isometry relation
            out.push_back({Word::iso(k + l), 1});
        }
    } else if (x.kind == Word::Iso) {
        long k = x.a;
        if (k >= 0) out.push_back({Word::corner(y.a + k, y.b), 1});
        else if (-k <= y.a) out.push_back({Word::corner(y.a + k, y.b), 1});
    } else if (y.kind == Word::Iso) {
        long l = y.a;
        if (l <= 0) out.push_back({Word::corner(x.a, x.b - l), 1});
        else if (l <= x.b) out.push_back({Word::corner(x.a, x.b - l), 1});
    } else if (x.b == y.a) {
        out.push_back({Word::corner(x.a, y.b), 1});
    }
    return out;
}

}  // namespace bulkedge
