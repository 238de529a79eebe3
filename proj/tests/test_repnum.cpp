#include "doctest.h"

#include "heegcone/error.hpp"
#include "heegcone/repnum.hpp"

using namespace heegcone;

namespace {

Integer brute(const EvenLattice& l, const Rational& m, const DiscElement& mu, std::uint64_t a) {
  const DiscGroup g(l);
  return rep_count_bruteforce(l, m, g.representative(mu), Integer(static_cast<unsigned long>(a)));
}

}  // namespace

TEST_CASE("w exponent") {
  CHECK(w_exponent(1, 1, 2) == 3);
  CHECK(w_exponent(3, 1, 3) == 3);
  CHECK(w_exponent(1, 2, 2) == 5);
  CHECK(w_exponent(Rational(1, 4), 2, 2) == 1);
  CHECK(w_exponent(5, 1, 3) == 1);
  CHECK_THROWS_AS(w_exponent(Rational(1, 3), 1, 2), Error);
}

TEST_CASE("brute force examples") {
  const EvenLattice u = hyperbolic_plane();
  const DiscGroup gu(u);
  CHECK(brute(u, 1, gu.zero(), 2) == 1);
  const EvenLattice r = rank1_lattice(2);
  const DiscGroup gr(r);
  CHECK(brute(r, 1, gr.zero(), 4) == 2);
  CHECK(brute(build_named("E8"), 7, DiscGroup(build_named("E8")).zero(), 1) == 1);
  CHECK_THROWS_AS(rep_count_bruteforce(build_named("E8"), 0, RatVector(8), 16, 1 << 20), Error);
}

TEST_CASE("closed forms match enumeration") {
  const EvenLattice u = hyperbolic_plane();
  const EvenLattice uu = build_named("U+U");
  CHECK(rep_count_U(1, 2, 1) == 1);
  CHECK(rep_count_U(0, 3, 2) == 21);
  CHECK(rep_count_U(3, 3, 1) == 5);
  CHECK(rep_count_UU(1, 2, 1) == 6);
  CHECK(rep_count_UU(0, 2, 1) == 10);
  CHECK(rep_count_UU(17, 5, 0) == 1);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int nu = 0; nu <= 3; ++nu) {
      const std::uint64_t q = ipow_u64(p, nu);
      const auto hu = histogram_bruteforce(u.gram(), IntVector(2, 0), q);
      const auto huu = histogram_bruteforce(uu.gram(), IntVector(4, 0), q, std::uint64_t{1} << 28);
      for (std::uint64_t m = 0; m < q; ++m) {
        CHECK(rep_count_U(Integer(static_cast<unsigned long>(m)), p, nu) == Integer(static_cast<unsigned long>(hu[m])));
        CHECK(rep_count_UU(Integer(static_cast<unsigned long>(m)), p, nu) == Integer(static_cast<unsigned long>(huu[m])));
      }
    }
  }
}

TEST_CASE("prime power convolution equals enumeration") {
  const EvenLattice uu = build_named("U+U");
  CHECK(rep_count_prime_power(uu, 1, DiscGroup(uu).zero(), 2, 1) == 6);
  for (const char* spec : {"rank1(2)+U", "rank1(4)+U", "rank1(6)+U", "rank1(2)+U+U", "Hilbert(5)", "Hilbert(12)",
                           "rank1(4)+rank1(4)"}) {
    const EvenLattice l = build_named(spec);
    RepCounter counter(l);
    for (const auto& mu : counter.group().elements())
      for (std::uint64_t p : {2, 3, 5})
        for (int nu = 1; ipow_u64(p, nu * l.rank()) <= 40000; ++nu) {
          const std::uint64_t q = ipow_u64(p, nu);
          for (std::uint64_t j = 0; j < q; ++j) {
            const Rational m = counter.group().q_value(mu) + Integer(static_cast<unsigned long>(j));
            CHECK(counter.count_prime_power(m, mu, p, nu) == brute(l, m, mu, q));
          }
        }
  }
}

TEST_CASE("E8 histograms") {
  const EvenLattice e8 = build_named("E8");
  RepCounter counter(e8);
  const DiscElement zero = counter.group().zero();
  const IntVector g(8, 0);
  for (int nu = 1; nu <= 2; ++nu) {
    const std::uint64_t q = ipow_u64(3, nu);
    const auto h = histogram_bruteforce(e8.gram(), g, q);
    for (std::uint64_t m = 0; m < q; ++m)
      CHECK(counter.count_prime_power(Integer(static_cast<unsigned long>(m)), zero, 3, nu) ==
            Integer(static_cast<unsigned long>(h[m])));
  }
  // p = 2 closed form (E8 and U^4 agree over Z_2) against enumeration mod 2 and 4.
  for (int nu = 1; nu <= 2; ++nu) {
    const std::uint64_t q = ipow_u64(2, nu);
    const auto h = histogram_bruteforce(e8.gram(), g, q);
    for (std::uint64_t m = 0; m < q; ++m)
      CHECK(counter.count_prime_power(Integer(static_cast<unsigned long>(m)), zero, 2, nu) ==
            Integer(static_cast<unsigned long>(h[m])));
  }
  const auto h5 = histogram_diagonal(e8.gram(), g, 5, 1);
  const auto b5 = histogram_bruteforce(e8.gram(), g, 5);
  for (int m = 0; m < 5; ++m) CHECK(h5[m] == Integer(static_cast<unsigned long>(b5[m])));
}

TEST_CASE("multiplicativity in the modulus") {
  const EvenLattice u = hyperbolic_plane();
  const DiscGroup g(u);
  CHECK(rep_count(u, 1, g.zero(), 6) == rep_count_U(1, 2, 1) * rep_count_U(1, 3, 1));
  CHECK(rep_count(u, 1, g.zero(), 6) == 2);
  CHECK(brute(u, 1, g.zero(), 6) == 2);
  CHECK(rep_count(u, 0, g.zero(), 4) == 8);
  CHECK(rep_count(u, 5, g.zero(), 1) == 1);
  const EvenLattice l = build_named("rank1(2)+U");
  RepCounter counter(l);
  for (const auto& mu : counter.group().elements())
    for (std::uint64_t a : {6, 10, 12, 15}) {
      for (int j = 0; j < 8; ++j) {
        const Rational m = counter.group().q_value(mu) + j;
        CHECK(counter.count(m, mu, Integer(static_cast<unsigned long>(a))) == brute(l, m, mu, a));
      }
    }
}

TEST_CASE("mass conservation and stabilization") {
  for (const char* spec : {"rank1(2)+U", "rank1(4)+U+U", "K3(1)"}) {
    const EvenLattice l = build_named(spec);
    RepCounter counter(l);
    for (const auto& mu : counter.group().elements())
      for (std::uint64_t p : {2, 3}) {
        for (int nu = 1; nu <= 4; ++nu) {
          Integer total = 0;
          for (const auto& x : counter.histogram(mu, p, nu)) total += x;
          CHECK(total == ipow(Integer(static_cast<unsigned long>(p)), nu * l.rank()));
        }
      }
  }
  // Normalized counts are constant from w_p on.
  for (const char* spec : {"U+U", "rank1(2)+U", "rank1(4)+U"}) {
    const EvenLattice l = build_named(spec);
    RepCounter counter(l);
    for (const auto& mu : counter.group().elements())
      for (std::uint64_t p : {2, 3})
        for (int j = 1; j <= 12; ++j) {
          const Rational m = counter.group().q_value(mu) + j - 1;
          if (m <= 0) continue;
          const int w = w_exponent(m, counter.group().order(mu), p);
          const Integer P = static_cast<unsigned long>(p);
          auto normalized = [&](int nu) -> Rational {
            return Rational(counter.count_prime_power(m, mu, p, nu)) / ipow(P, nu * (l.rank() - 1));
          };
          const Rational base = normalized(w);
          for (int nu = w + 1; nu <= w + 2; ++nu) CHECK(normalized(nu) == base);
          if (ipow_u64(p, (w + 2) * l.rank()) <= (1u << 22)) {
            const Integer b = brute(l, m, mu, ipow_u64(p, w + 2));
            CHECK(Rational(b) / ipow(P, (w + 2) * (l.rank() - 1)) == base);
          }
        }
  }
}

TEST_CASE("closed forms can be disabled") {
  const EvenLattice l = build_named("rank1(2)+U+U");
  RepCounter fast(l), slow(l, RepOptions{default_enumeration_cap, false});
  for (const auto& mu : fast.group().elements())
    for (int j = 0; j < 16; ++j) {
      const Rational m = fast.group().q_value(mu) + j;
      CHECK(fast.count_prime_power(m, mu, 2, 3) == slow.count_prime_power(m, mu, 2, 3));
      CHECK(fast.count_prime_power(m, mu, 3, 2) == slow.count_prime_power(m, mu, 3, 2));
    }
}
