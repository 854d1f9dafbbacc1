#include "doctest.h"

#include "qsln/fock.hpp"

#include <random>
#include <set>

using namespace qsln;

namespace {

std::vector<Rat> tuple(std::initializer_list<long> v) {
  std::vector<Rat> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::mt19937_64 rng(7);

FockState random_state(const Ctx& ctx, long maxdeg) {
  FockState s;
  std::uniform_int_distribution<int> mom(-2, 2), fam(0, ctx.N()), mode(1, 2);
  std::vector<Rat> mv;
  for (int k = 0; k < ctx.N() + 2; ++k) mv.push_back(Rat(mom(rng)));
  s.mom = Momenta(std::move(mv));
  long deg = 0;
  while (deg < maxdeg) {
    OscId id{fam(rng), -mode(rng)};
    if (deg - id.mode > maxdeg) break;
    deg -= id.mode;
    auto it = std::lower_bound(s.exc.begin(), s.exc.end(), id,
                               [](const auto& p, const OscId& x) { return p.first < x; });
    if (it != s.exc.end() && it->first == id) it->second++;
    else s.exc.insert(it, {id, 1});
  }
  return s;
}

}  // namespace

TEST_CASE("vacuum vectors") {
  Ctx ctx(3, 6);
  // |lambda_alpha> = |beta,...,beta,beta-alpha;-alpha>
  long alpha = 2;
  FockVector v = vacuum_vector(tuple({0, 0, 0, -2, -2}));
  CHECK(v.size() == 1);
  auto cls = classify_highest_weight(ctx, v.terms().begin()->first.mom);
  CHECK(cls.cls == HwClass::Class2);
  CHECK(cls.class2_alpha == Rat(alpha));
  CHECK(cls.weights[0] == Rat(1 - alpha));
  CHECK(cls.weights[3] == Rat(alpha));
  // |Lambda_m> = |beta+1,..,beta+1,beta,..,beta;0> with the step at m
  auto lam = tuple({1, 1, 0, 0, 0});
  auto cls2 = classify_highest_weight(ctx, lam);
  CHECK(cls2.cls == HwClass::Class1);
  CHECK(cls2.class1_index == 2);
  CHECK(cls2.weights == std::vector<Rat>{Rat(0), Rat(0), Rat(1), Rat(0)});
  // generic tuple classifies as none
  CHECK(classify_highest_weight(ctx, tuple({1, 2, 3, 4, 5})).cls == HwClass::None);
  // all-zero is the alpha = 0 member of class 2
  CHECK(classify_highest_weight(ctx, tuple({0, 0, 0, 0, 0})).cls == HwClass::Class2);
}

TEST_CASE("oscillator ladders") {
  Ctx ctx(3, 6);
  const int N = 3;
  FockVector vac = vacuum_vector(tuple({1, 0, 0, 0, 0}));
  SUBCASE("annihilation kills the vacuum") {
    for (int i = 1; i <= N; ++i)
      CHECK(apply_oscillator(ctx, {Fam::a(i, N), 1}, vac).is_zero());
    CHECK(apply_oscillator(ctx, {Fam::b(N), 2}, vac).is_zero());
    CHECK(apply_oscillator(ctx, {Fam::c(N), 1}, vac).is_zero());
  }
  SUBCASE("a^1_1 a^1_{-1}|0> = |0>") {
    FockVector v = apply_oscillator(ctx, {Fam::a(1, N), -1}, vac);
    FockVector w = apply_oscillator(ctx, {Fam::a(1, N), 1}, v);
    CHECK(w == vac);  // [1]^2/1 = 1
  }
  SUBCASE("b_1 b_{-1}|0> = -|0>") {
    FockVector v = apply_oscillator(ctx, {Fam::b(N), -1}, vac);
    FockVector w = apply_oscillator(ctx, {Fam::b(N), 1}, v);
    CHECK(w == vac * Scalar(Rat(-1)));
  }
  SUBCASE("zero modes measure momenta") {
    FockVector w = apply_oscillator(ctx, {Fam::a(1, N), 0}, vac);
    CHECK(w == vac * Scalar(Rat(1)));
    // b_0 eigenvalue carries the sign flip from [b_0, Q_b] = -1
    FockVector u = vacuum_vector(tuple({0, 0, 0, 2, 0}));
    CHECK(apply_oscillator(ctx, {Fam::b(N), 0}, u) == u * Scalar(Rat(-2)));
  }
}

TEST_CASE("commutator closure on random vectors") {
  Ctx ctx(3, 12);
  const int N = 3;
  std::vector<int> fams;
  for (int i = 1; i <= N; ++i) fams.push_back(Fam::h(i));
  fams.push_back(Fam::c(N));
  for (int i = 1; i <= N; ++i) fams.push_back(Fam::a(i, N));
  fams.push_back(Fam::b(N));
  for (int rep = 0; rep < 10; ++rep) {
    FockVector v = FockVector::basis(random_state(ctx, 3));
    std::uniform_int_distribution<size_t> pick(0, fams.size() - 1);
    std::uniform_int_distribution<long> mode(1, 3);
    int fa = fams[pick(rng)], fb = fams[pick(rng)];
    long n = mode(rng);
    // [x_n, y_{-n}] v = gram(x,y,n) v
    FockVector ab = apply_oscillator(ctx, {fa, n}, apply_oscillator(ctx, {fb, -n}, v));
    FockVector ba = apply_oscillator(ctx, {fb, -n}, apply_oscillator(ctx, {fa, n}, v));
    CHECK(ab - ba == v * Scalar(ctx.gram(fa, fb, n)));
    // opposite modes of the same sign commute
    FockVector cd = apply_oscillator(ctx, {fa, -n}, apply_oscillator(ctx, {fb, -n - 1}, v));
    FockVector dc = apply_oscillator(ctx, {fb, -n - 1}, apply_oscillator(ctx, {fa, -n}, v));
    CHECK(cd == dc);
  }
}

TEST_CASE("derivation operator") {
  Ctx ctx(3, 6);
  FockVector vac = vacuum_vector(tuple({0, 0, 0, 0, 0}));
  CHECK(d_apply(ctx, vac).is_zero());
  SUBCASE("d grading on creation modes") {
    // d(h^1_{-2} v) - h^1_{-2} d(v) = -2 h^1_{-2} v
    for (int rep = 0; rep < 20; ++rep) {
      FockState st = random_state(ctx, 2);
      st.exc.clear();  // keep h/c families only below
      std::uniform_int_distribution<int> fam(0, 3), mode(1, 2);
      st.exc.push_back({OscId{fam(rng), -mode(rng)}, 1});
      std::sort(st.exc.begin(), st.exc.end());
      FockVector v = FockVector::basis(st);
      std::uniform_int_distribution<int> f2(0, 3);
      long n = mode(rng);
      OscId id{f2(rng), -n};
      FockVector lhs = d_apply(ctx, apply_oscillator(ctx, id, v)) -
                       apply_oscillator(ctx, id, d_apply(ctx, v));
      CHECK(lhs == apply_oscillator(ctx, id, v) * Scalar(Rat(-n)));
    }
  }
  SUBCASE("highest weight vector sees only the zero-mode term") {
    FockVector v = vacuum_vector(tuple({0, 0, 0, -1, -1}));  // |lambda_1>, alpha=1
    Rat z = ctx.zero_mode_weight(v.terms().begin()->first.mom);
    CHECK(d_apply(ctx, v) == v * Scalar(-z));
  }
  SUBCASE("raw a/b excitations are rejected") {
    FockState st;
    st.mom = Momenta(tuple({0, 0, 0, 0, 0}));
    st.exc.push_back({OscId{Fam::a(1, 3), -1}, 1});
    CHECK_THROWS_AS(d_apply(ctx, FockVector::basis(st)), std::domain_error);
  }
}

TEST_CASE("fermi number") {
  SUBCASE("vacuum and even-N value") {
    Ctx ctx(4, 4);
    FockVector vac = vacuum_vector(tuple({0, 0, 0, 0, 0, 0}));
    CHECK(fermi_number(ctx, vac).is_zero());
    // b_0-eigenvalue 1 means lambda_{N+1} = -1; N_f = (N-1) * 1 = 3
    FockVector u = vacuum_vector(tuple({0, 0, 0, 0, -1, 0}));
    CHECK(fermi_number(ctx, u) == u * Scalar(Rat(3)));
  }
  SUBCASE("odd-N value") {
    Ctx ctx(3, 4);
    FockVector u = vacuum_vector(tuple({1, 0, 0, 2, 1}));
    // L(sum a^i_0 - b_0) + c_0 = 1*(1 + 2) + 1 = 4
    CHECK(fermi_number(ctx, u) == u * Scalar(Rat(4)));
  }
}

TEST_CASE("sector lattice") {
  Ctx ctx(3, 6);
  Sector sec{3, 1, Rat(1, 3)};
  SUBCASE("roundtrip") {
    std::vector<long> is{2, -1, 0};
    auto mom = sec.momenta(is, 2);
    auto coords = sec.locate(mom);
    REQUIRE(coords.has_value());
    CHECK(coords->is == is);
    CHECK(coords->ghost_level == 2);
  }
  SUBCASE("mismatched momenta excluded") {
    auto mom = sec.momenta({0, 0, 0}, 0);
    auto shifted = mom.shifted({Rat(1, 2), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK_FALSE(sec.locate(shifted).has_value());
  }
  SUBCASE("h-shifts move within the lattice") {
    auto mom = sec.momenta({0, 1, 0}, 0);
    // Q_{h^1} shift: lambda_1 + 1, lambda_2 - 1
    std::vector<Rat> shift{Rat(1), Rat(-1), Rat(0), Rat(0), Rat(0)};
    FockVector v = apply_momentum_shift(shift, vacuum_vector(mom));
    CHECK(sec.locate(v.terms().begin()->first.mom).has_value());
  }
}

TEST_CASE("basis enumeration is duplicate-free and degree-complete") {
  Ctx ctx(3, 6);
  Sector sec{3, 0, Rat(0)};
  long D = 3;
  auto basis = enumerate_basis(ctx, sec, 0, D);
  std::set<FockState> uniq(basis.begin(), basis.end());
  CHECK(uniq.size() == basis.size());

  // independent recursive count: brute-force box scan over the lattice plus
  // colored partition counting for the excitations
  Rat floor_val = sector_weight_floor(ctx, sec, 0);
  auto npart = [](long budget, int colors) {
    // number of multisets of (color, mode>=1) with total mode sum <= budget
    std::vector<std::vector<long>> cache(budget + 1, std::vector<long>(budget + 2, -1));
    auto rec = [&](auto&& self, long b, long minmode, int cols) -> long {
      if (b == 0 || minmode > b) return 1;
      long total = self(self, b, minmode + 1, cols);  // skip this mode entirely
      // choose k >= 1 excitations of mode minmode split over colors
      for (long k = 1; k * minmode <= b; ++k) {
        // multisets of size k over `cols` colors: C(k+cols-1, cols-1)
        long ways = 1;
        for (long t = 1; t <= cols - 1; ++t) ways = ways * (k + t) / t;
        total += ways * self(self, b - k * minmode, minmode + 1, cols);
      }
      return total;
    };
    return rec(rec, budget, 1, colors);
  };
  long expect = 0;
  for (long i1 = -8; i1 <= 8; ++i1)
    for (long i2 = -8; i2 <= 8; ++i2)
      for (long i3 = -8; i3 <= 8; ++i3) {
        auto mom = sec.momenta({i1, i2, i3}, 0);
        Rat z = ctx.zero_mode_weight(mom) - floor_val;
        if (z > Rat(D)) continue;
        long budget = to_long(rat_floor(Rat(D) - z));
        expect += npart(budget, 4);
      }
  CHECK((long)basis.size() == expect);
  // every enumerated state is on the lattice
  for (const auto& st : basis) CHECK(sec.locate(st.mom).has_value());
}
