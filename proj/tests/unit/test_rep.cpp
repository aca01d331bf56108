#include <doctest.h>

#include <tsf/error.hpp>
#include <tsf/rep.hpp>

using namespace tsf;

TEST_SUITE("rep") {

TEST_CASE("Clebsch-Gordan decomposition") {
    CHECK(tensor_decompose(Rep::spin(0.5), Rep::spin(0.5)) == Rep({0, 2}));
    CHECK(tensor_decompose(Rep::spin(1), Rep::spin(0.5)) == Rep({1, 3}));
    CHECK(tensor_decompose(Rep::spin(1), Rep::spin(1)) == Rep({0, 2, 4}));
    CHECK(tensor_decompose(Rep({0, 2}), Rep::spin(0.5)) == Rep({1, 1, 3}));
    CHECK(tensor_all({}) == Rep{});
}

TEST_CASE("dimension is multiplicative") {
    std::vector<Rep> rs = {Rep::spin(0), Rep::spin(0.5), Rep::spin(1), Rep::spin(1.5), Rep({0, 2}), Rep({1, 1, 3})};
    for (const auto& a : rs)
        for (const auto& b : rs) {
            CHECK(tensor_decompose(a, b).dim() == a.dim() * b.dim());
            CHECK(tensor_decompose(a, b) == tensor_decompose(b, a));
            for (const auto& c : rs) CHECK(tensor_all({a, b, c}) == tensor_decompose(a, tensor_decompose(b, c)));
        }
}

TEST_CASE("spins parse and print") {
    CHECK(Rep::from_spins({1, 0.5}).str() == "{1/2,1}");
    CHECK(Rep::from_spins({0.5}).spins() == std::vector<double>{0.5});
    CHECK_THROWS_AS(Rep::from_spins({0.3}), Error);
    CHECK_THROWS_AS(Rep::from_spins({-1}), Error);
}

}
