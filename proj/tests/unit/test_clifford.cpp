#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "bulkedge/clifford.hpp"

using namespace bulkedge;

namespace {

IntMat anti(const IntMat& a, const IntMat& b) { return a * b + b * a; }

int inversion_parity(const std::vector<int>& s) {
    int inv = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

void check_relations(const CliffordBimodule& c) {
    auto n = c.dim();
    IntMat id = IntMat::identity(n), zero(n, n);
    for (int i = 0; i < c.d; ++i) {
        CHECK(c.gamma[i] * c.gamma[i] == id);
        CHECK(c.gamma[i].transpose() == c.gamma[i]);
        CHECK(c.rho[i] * c.rho[i] == -id);
        CHECK(c.rho[i].transpose() == -c.rho[i]);
        CHECK(anti(c.grading, c.gamma[i]) == zero);
        CHECK(anti(c.grading, c.rho[i]) == zero);
        for (int j = 0; j < c.d; ++j) {
            CHECK(anti(c.gamma[i], c.rho[j]) == zero);
            if (i != j) {
                CHECK(anti(c.gamma[i], c.gamma[j]) == zero);
                CHECK(anti(c.rho[i], c.rho[j]) == zero);
            }
        }
    }
}

}  // namespace

TEST_CASE("exterior basis is lexicographic") {
    auto b = exterior_basis(3);
    REQUIRE(b.size() == 8);
    std::vector<std::vector<int>> expect = {{}, {1}, {1, 2}, {1, 2, 3}, {1, 3}, {2}, {2, 3}, {3}};
    CHECK(b == expect);
}

TEST_CASE("d = 1 generators") {
    auto c = build_exterior_rep(1);
    IntMat g(2, 2), r(2, 2);
    g(0, 1) = 1;
    g(1, 0) = 1;
    r(0, 1) = -1;
    r(1, 0) = 1;
    CHECK(c.gamma[0] == g);
    CHECK(c.rho[0] == r);
    CHECK(c.grading(0, 0) == 1);
    CHECK(c.grading(1, 1) == -1);
}

TEST_CASE("relations hold exactly up to d = 6") {
    for (int d = 1; d <= 6; ++d) check_relations(build_exterior_rep(d));
}

TEST_CASE("size limits") {
    CHECK_THROWS_AS(build_exterior_rep(0), SizeLimitError);
    CHECK_THROWS_AS(build_exterior_rep(13), SizeLimitError);
}

TEST_CASE("orientation sign equals inversion parity, exhaustive d <= 5") {
    for (int d = 1; d <= 5; ++d) {
        std::vector<int> s(d);
        std::iota(s.begin(), s.end(), 1);
        do {
            CHECK(orientation_sign(s) == inversion_parity(s));
        } while (std::next_permutation(s.begin(), s.end()));
    }
    CHECK_THROWS(orientation_sign({1, 1}));
}

TEST_CASE("cyclic shift sign") {
    CHECK(orientation_sign({2, 1}) == -1);
    CHECK(orientation_sign({2, 3, 1}) == 1);
    CHECK(orientation_sign({1, 2, 3, 4}) == 1);
}

TEST_CASE("graded tensor") {
    auto a = build_exterior_rep(1);
    auto t = graded_tensor(a, a);
    check_relations(t);
    CHECK(t.grading == kron(a.grading, a.grading));

    SUBCASE("associative for total d <= 5") {
        for (int da = 1; da <= 3; ++da)
            for (int db = 1; da + db <= 4; ++db)
                for (int dc = 1; da + db + dc <= 5; ++dc) {
                    auto A = build_exterior_rep(da), B = build_exterior_rep(db), C = build_exterior_rep(dc);
                    auto l = graded_tensor(graded_tensor(A, B), C);
                    auto r = graded_tensor(A, graded_tensor(B, C));
                    CHECK(l.grading == r.grading);
                    for (int j = 0; j < l.d; ++j) {
                        CHECK(l.gamma[j] == r.gamma[j]);
                        CHECK(l.rho[j] == r.rho[j]);
                    }
                }
    }

    SUBCASE("product of two d = 1 factors is equivalent to d = 2") {
        auto e = build_exterior_rep(2);
        // brute force over signed 4x4 permutation matrices
        std::vector<int> perm = {0, 1, 2, 3};
        bool found = false;
        do {
            for (int signs = 0; signs < 16 && !found; ++signs) {
                IntMat u(4, 4);
                for (int k = 0; k < 4; ++k) u(perm[k], k) = (signs >> k) & 1 ? -1 : 1;
                bool ok = u * t.grading == e.grading * u;
                for (int j = 0; j < 2 && ok; ++j)
                    ok = u * t.gamma[j] == e.gamma[j] * u && u * t.rho[j] == e.rho[j] * u;
                found = ok;
            }
        } while (!found && std::next_permutation(perm.begin(), perm.end()));
        CHECK(found);
    }
    CHECK_THROWS_AS(graded_tensor(build_exterior_rep(7), build_exterior_rep(6)), SizeLimitError);
}

TEST_CASE("relabel operator realises the permutation") {
    for (int d = 2; d <= 4; ++d) {
        std::vector<int> s(d);
        s[0] = d;
        for (int j = 1; j < d; ++j) s[j] = j;
        auto c = build_exterior_rep(d);
        IntMat xi = relabel_operator(s);
        CHECK(xi * xi.transpose() == IntMat::identity(c.dim()));
        for (int j = 0; j < d; ++j) {
            CHECK(xi * c.gamma[j] * xi.transpose() == c.gamma[s[j] - 1]);
            CHECK(xi * c.rho[j] * xi.transpose() == c.rho[s[j] - 1]);
        }
        CHECK(xi * c.grading * xi.transpose() == c.grading);
    }
}

TEST_CASE("degree bookkeeping") {
    CHECK(abs_degree(make_degree(4, Field::Real), 2).j == 2);
    CHECK(abs_degree(abs_degree(make_degree(4, Field::Real), 1), 1).j == 2);
    CHECK(abs_degree(make_degree(3, Field::Real), 3).j == 0);
    CHECK(abs_degree(make_degree(1, Field::Complex), 1).j == 0);
    for (int j = -10; j < 10; ++j)
        for (int d = 1; d < 5; ++d)
            CHECK(abs_degree(make_degree(j + 8, Field::Real), d) == abs_degree(make_degree(j, Field::Real), d));
    CHECK(abs_degree(make_degree(0, Field::Complex), 3).j == 1);
}
