#include <doctest.h>

#include <random>
#include <set>

#include "jamsched/core.hpp"

using namespace jamsched;

namespace {

LengthSystem make(std::initializer_list<long long> raw) {
  return build_length_system(std::vector<long long>(raw));
}

QueueState queue_with(const LengthSystem& ls, std::vector<long long> counts) {
  QueueState q(ls.k());
  int id = 0;
  for (int i = 1; i <= ls.k(); ++i)
    for (long long n = 0; n < counts[i - 1]; ++n) q.push(i, id++);
  return q;
}

}  // namespace

TEST_CASE("length system construction and basic quantities") {
  LengthSystem ls = make({1, 2, 4});
  CHECK(ls.k() == 3);
  CHECK(ls.divisible());
  CHECK(ls.rho() == Rat(4));
  CHECK(ls.ratio(3, 2) == Rat(2));

  LengthSystem nd = make({2, 3});
  CHECK(nd.k() == 2);
  CHECK_FALSE(nd.divisible());
  CHECK(nd.ratio(2, 1) == Rat(3, 2));

  CHECK_THROWS_AS(make({1}), InvalidLengths);
  CHECK_THROWS_AS(make({2, 2}), InvalidLengths);
  CHECK_THROWS_AS(make({3, 2}), InvalidLengths);
  CHECK_THROWS_AS(build_length_system(std::vector<Rat>{Rat(-1), Rat(2)}), InvalidLengths);
}

TEST_CASE("rational lengths are rescaled to integers") {
  LengthSystem ls = build_length_system(std::vector<Rat>{Rat(1, 2), Rat(1), Rat(2)});
  CHECK(ls.lengths() == std::vector<long long>{1, 2, 4});
  CHECK(ls.divisible());
}

TEST_CASE("gamma on the worked examples") {
  CHECK(upper_bound_gamma(make({1, 2, 4})) == Rat(1, 2));
  CHECK(upper_bound_gamma(make({2, 3})) == Rat(2, 5));
  // minimizing pair is (3,2)
  CHECK(upper_bound_gamma(make({1, 2, 3})) == Rat(2, 5));
}

TEST_CASE("additive constants f on the worked examples") {
  CHECK(f_constants(make({1, 2, 4})) == std::vector<long long>{4, 15, 33});
  CHECK(f_constants(make({1, 2})) == std::vector<long long>{2, 11});
  CHECK(f_constants(make({2, 3})).front() == 3);
}

TEST_CASE("delta and eta on the worked examples") {
  AuxConstants a = aux_constants(make({2, 3}));
  CHECK(a.delta == Rat(3, 2));
  CHECK(a.eta == Rat(1, 4));

  AuxConstants b = aux_constants(make({1, 2, 4}));
  CHECK(b.delta == Rat(1));
  CHECK(b.eta == Rat(1, 3));
  CHECK(upper_bound_gamma(make({1, 2, 4})) == Rat(1) / (Rat(1) + b.delta));
}

TEST_CASE("gamma stays in (1/3, 1/2], hits 1/2 exactly on divisible systems") {
  std::mt19937_64 rng(20260825);
  std::uniform_int_distribution<int> kd(2, 6);
  std::uniform_int_distribution<long long> ld(1, 64);
  for (int trial = 0; trial < 500; ++trial) {
    std::set<long long> vals;
    int k = kd(rng);
    while (static_cast<int>(vals.size()) < k) vals.insert(ld(rng));
    std::vector<long long> lengths(vals.begin(), vals.end());
    LengthSystem ls = build_length_system(lengths);
    Rat g = upper_bound_gamma(ls);
    CHECK(g > Rat(1, 3));
    CHECK(g <= Rat(1, 2));
    CHECK((g == Rat(1, 2)) == ls.divisible());
    CHECK(g == Rat(1) / (Rat(1) + aux_constants(ls).delta));
  }
}

TEST_CASE("queue volume with selectors") {
  LengthSystem ls = make({1, 2, 4});
  QueueState q = queue_with(ls, {5, 1, 1});
  CHECK(queue_volume(q, ls, Selector::all()) == 11);
  CHECK(queue_volume(q, ls, Selector::less(3)) == 7);
  CHECK(queue_volume(queue_with(ls, {0, 0, 0}), ls, Selector::exact(2)) == 0);
  CHECK_THROWS_AS(queue_volume(q, ls, Selector::exact(4)), InvalidSelector);
}

TEST_CASE("queue classes are FIFO") {
  LengthSystem ls = make({1, 2});
  QueueState q(2);
  q.push(1, 7);
  q.push(1, 8);
  CHECK(q.front(1) == 7);
  CHECK(q.pop(1) == 7);
  CHECK(q.pop(1) == 8);
  CHECK(q.empty());
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/2") == Rat(3, 2));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(format_rational(Rat(6, 4)) == "3/2");
  CHECK(format_rational(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(floor_rat(Rat(3, 2)) == 1);
  CHECK(floor_rat(Rat(-3, 2)) == -2);
  CHECK(floor_rat(Rat(4)) == 4);
}
