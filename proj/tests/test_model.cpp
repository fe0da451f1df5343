#include <doctest.h>

#include <cmath>
#include <random>

#include "hetnet/model.hpp"

using namespace hetnet;

namespace {

UserProfile user(double delta, double theta, double b_min = 1.0) { return {delta, theta, b_min}; }

SpProfile provider(double alpha, double beta, double c_rate, double c_bw) {
    SpProfile sp;
    sp.alpha = alpha;
    sp.beta = beta;
    sp.cost_rate = c_rate;
    sp.cost_bw = c_bw;
    return sp;
}

}  // namespace

TEST_CASE("benefit values") {
    CHECK(user_benefit(0.0, user(1, 2)) == 0.0);
    CHECK(user_benefit(4.0, user(1, 2)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(user_benefit(8.0, user(3, 3)) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS(user_benefit(-1.0, user(1, 2)), DomainError);
}

TEST_CASE("benefit is subadditive and the doubling gap is below the single benefit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(1e-3, 50.0), th(1.01, 6.0), dl(0.1, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const auto u = user(dl(rng), th(rng));
        const double x = pos(rng), y = pos(rng);
        CHECK(user_benefit(x, u) + user_benefit(y, u) > user_benefit(x + y, u));
        const double gap = user_benefit(2 * x, u) - user_benefit(x, u);
        CHECK(doubling_gap(x, u) == doctest::Approx(gap).epsilon(1e-12));
        CHECK(doubling_gap(x, u) < user_benefit(x, u));
    }
}

TEST_CASE("user utility") {
    const auto u = user(1, 2);
    const Offer w = Bid{2.0, 1.0, 0.0, 0.5};
    CHECK(user_utility({false, false}, NoBid{}, NoBid{}, u, 0, 0) == 0.0);
    CHECK(user_utility({false, true}, NoBid{}, w, u, 0.0, 0.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(user_utility({true, false}, NoBid{}, w, u, 0.5, 0.5), DomainError);

    // two symmetric marginal bids give twice b_min for twice the price
    const auto v = user(3.0, 2.5, 2.0);
    const SpProfile sp = provider(0.4, 1.2, 0.1, 0.2);
    const double b = 3.1;
    const Offer bid = Bid{b, sp_price(b, sp), 1.0, 2.0 / b};
    const double expect = 3.0 * std::pow(4.0, 1.0 / 2.5) - 2 * 0.4 * std::pow(b, 1.2);
    CHECK(user_utility({true, true}, bid, bid, v, 2.0 / b, 2.0 / b) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("price and cost") {
    CHECK(sp_price(0.0, provider(1, 2, 1, 1)) == 0.0);
    CHECK(sp_price(3.0, provider(1, 2, 1, 1)) == doctest::Approx(9.0));
    CHECK(sp_price(4.0, provider(0.5, 1.2, 1, 1)) == doctest::Approx(2.63901582154578852).epsilon(1e-14));
    CHECK(sp_cost(0, 0, provider(1, 2, 0.1, 0.5)) == 0.0);
    CHECK(sp_cost(2, 4, provider(1, 2, 0.1, 0.5)) == doctest::Approx(2.2));
    CHECK(sp_cost(2, 4.5, provider(1, 2, 0.1, 0.5)) > sp_cost(2, 4, provider(1, 2, 0.1, 0.5)));
}

TEST_CASE("pricing is convex") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(0.0, 40.0), l(0.0, 1.0), be(1.01, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const auto sp = provider(0.7, be(rng), 1, 1);
        const double x = r(rng), y = r(rng), t = l(rng);
        CHECK(sp_price(t * x + (1 - t) * y, sp) <= t * sp_price(x, sp) + (1 - t) * sp_price(y, sp) + 1e-9);
    }
}

TEST_CASE("provider utility") {
    const auto sp = provider(1, 2, 0.1, 0.5);
    const Offer bid = Bid{2.0, 5.0, 4.0, 0.6};
    CHECK(sp_utility(true, bid, sp) == doctest::Approx(2.8));
    CHECK(sp_utility(false, bid, sp) < 0.0);
    CHECK(sp_utility(true, NoBid{}, sp) == 0.0);
    CHECK(sp_utility(false, NoBid{}, sp) == 0.0);
    CHECK(sp_utility(true, bid, sp) - sp_utility(false, bid, sp) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(validate(user(0, 2)), DomainError);
    CHECK_THROWS_AS(validate(user(1, 1)), DomainError);
    CHECK_THROWS_AS(validate(user(1, 2, 0)), DomainError);
    CHECK_THROWS_AS(validate(provider(1, 1.0, 1, 1)), DomainError);
    CHECK_THROWS_AS(validate(Bid{1, 1, 1, 1.5}), DomainError);
    CHECK_NOTHROW(validate(provider(1, 1.2, 1, 1)));
}
