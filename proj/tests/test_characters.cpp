#include "doctest.h"

#include "qsln/characters.hpp"

using namespace qsln;

TEST_CASE("brute vs closed characters, N=3") {
  Ctx ctx(3, 9);
  long K = 3;
  for (long alpha : {-1L, 0L, 1L}) {
    Sector sec{3, alpha, Rat(0)};
    for (auto proj : {Projector::Ker, Projector::Coker}) {
      for (bool super : {false, true}) {
        CharacterSeries b = brute_character(ctx, sec, proj, K, super);
        CharacterSeries c = closed_character(3, alpha, proj, K, super, x_window_of(b, 1));
        SeriesMatch m = compare_characters(b, c);
        INFO("alpha=" << alpha << " proj=" << (proj == Projector::Ker ? "Ker" : "Coker")
                      << " super=" << super << " : " << m.first_discrepancy);
        CHECK(m.equal);
        CHECK(m.qshift == 0);
        CHECK(m.factor == 1);
        CHECK(m.order - b.min_qexp() >= Rat(K));
        if (!super) CHECK(b.nonnegative());
      }
    }
  }
}

TEST_CASE("lowest order of the alpha=0 character is the vacuum") {
  Ctx ctx(3, 7);
  Sector sec{3, 0, Rat(0)};
  CharacterSeries b = brute_character(ctx, sec, Projector::Ker, 2, false);
  REQUIRE_FALSE(b.is_zero());
  auto lead = b.terms().begin();
  CHECK(lead->first.first == Rat(0));
  CHECK(lead->first.second == std::vector<long>{0, 0, 0});
  CHECK(lead->second == 1);
}

TEST_CASE("beta independence of the brute character") {
  Ctx ctx(3, 8);
  long K = 2;
  Sector a{3, 1, Rat(0)};
  Sector b{3, 1, Rat(1, 3)};
  for (auto proj : {Projector::Ker, Projector::Coker}) {
    CharacterSeries ca = brute_character(ctx, a, proj, K, false);
    CharacterSeries cb = brute_character(ctx, b, proj, K, false);
    SeriesMatch m = compare_characters(ca, cb);
    CHECK(m.equal);
    CHECK(m.qshift == 0);
    CHECK(m.factor == 1);
  }
}

TEST_CASE("BRST character identity (C1)") {
  Ctx ctx(3, 9);
  for (long alpha : {0L, 1L}) {
    for (bool super : {false, true}) {
      auto rep = brst_identity_check(ctx, alpha, Rat(0), 3, super);
      INFO("alpha=" << alpha << " super=" << super << " " << rep.note);
      CHECK(rep.closed_equal);
      CHECK(rep.brute_equal);
      CHECK(rep.lattice_equal);
      CHECK(rep.factor == (super ? Rat(-1) : Rat(1)));
    }
  }
}

TEST_CASE("basis count at D=1 matches the character coefficient") {
  // cross-module consistency: the number of unprojected states at the first
  // excited level equals the q^1 coefficient of Ker + Coker
  Ctx ctx(3, 7);
  Sector sec{3, 0, Rat(0)};
  CharacterSeries k = brute_character(ctx, sec, Projector::Ker, 1, false);
  CharacterSeries c = brute_character(ctx, sec, Projector::Coker, 1, false);
  auto basis = enumerate_basis(ctx, sec, 0, 1);
  Rat floor_val = sector_weight_floor(ctx, sec, 0);
  long states_at_1 = 0;
  for (const auto& st : basis)
    if (Rat(st.degree()) + ctx.zero_mode_weight(st.mom) - floor_val == Rat(1)) ++states_at_1;
  Rat coeff(0);
  for (const auto& [key, v] : k.terms())
    if (key.first == floor_val + 1) coeff += v;
  for (const auto& [key, v] : c.terms())
    if (key.first == floor_val + 1) coeff += v;
  CHECK(coeff == Rat(states_at_1));
}

TEST_CASE("chi_alpha trace equals the specialized character") {
  Ctx ctx(3, 9);
  const int N = 3;
  Sector sec{N, 0, Rat(0)};
  std::vector<Rat> xw{Rat(-1), Rat(0), Rat(3)};  // -l(N-1-l) for N=3
  Rat floor_chi = weight_floor(ctx, sec, 0, Rat(2 * (N - 1)), xw);
  QSeries chi = chi_alpha_trace(ctx, sec, floor_chi + Rat(8));
  // specialize a deep enough character: q -> q^{2(N-1)}, x_l -> q^{-l(N-1-l)}
  CharacterSeries ch = brute_character(ctx, sec, Projector::Ker, 5, false);
  QSeries spec = specialize_character(ch, N, 2 * (N - 1), xw);
  spec.order = chi.order;  // compare on the rigorously complete window
  Rat where;
  INFO("first mismatch at q^" << where.str());
  CHECK(chi.matches(spec, &where));
  REQUIRE_FALSE(chi.c.empty());
  CHECK(chi.c.begin()->second > 0);
}
