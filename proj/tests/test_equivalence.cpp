#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "support.hpp"

using namespace nuset;
using support::kind_of;

namespace {
std::size_t fibre_total(const IndexedNuSet& S, int n) {
  std::size_t total = 0;
  for (const auto& entry : S.family(n)) total += entry.second.size;
  return total;
}
}  // namespace

TEST_CASE("round trips on standard shapes", "[equivalence]") {
  for (int v = 1; v <= 2; ++v)
    for (std::size_t n = 0; n <= 3; ++n) {
      TruncatedPresheaf P = standard_shape(Arity(v), n);
      IndexedNuSet S = to_indexed(P);
      INFO("nu=" << v << " n=" << n);
      RoundTripReport a = round_trip_report(P);
      RoundTripReport b = round_trip_report(S);
      CHECK(a.ok());
      CHECK(b.ok());
      CHECK(a.carrier_bijections.size() == n + 1);
      for (int m = 0; m <= static_cast<int>(n); ++m) CHECK(fibre_total(S, m) == P.carrier(m).size);
    }
}

TEST_CASE("round trips on oracle instances and random sets", "[equivalence]") {
  for (const char* name : {"loops2", "loops3", "parallel", "twin_square", "simplicial_pair"}) {
    TruncatedPresheaf P = support::load_fibred(name);
    INFO(name);
    CHECK(round_trip_report(P).ok());
    CHECK(round_trip_report(to_indexed(P)).ok());
  }
  for (int v = 1; v <= 2; ++v)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      IndexedNuSet S = random_indexed(Arity(v), 2, seed);
      TruncatedPresheaf P = to_fibred(S);
      INFO("nu=" << v << " seed=" << seed);
      CHECK(round_trip_report(S).ok());
      CHECK(round_trip_report(P).ok());
      for (int n = 0; n <= 2; ++n) CHECK(fibre_total(S, n) == P.carrier(n).size);
    }
}

TEST_CASE("the twin square has a two-element fibre", "[equivalence]") {
  IndexedNuSet S = to_indexed(support::load_fibred("twin_square"));
  std::size_t two = 0;
  for (const auto& entry : S.family(2)) two += entry.second.size == 2;
  CHECK(two == 1);
  CHECK(fibre_total(S, 2) == 2);
}

TEST_CASE("the left convention is compatible, the mirrored one is not", "[equivalence]") {
  for (int v = 1; v <= 2; ++v) {
    for (std::size_t n = 0; n <= 3; ++n) {
      TruncatedPresheaf P = standard_shape(Arity(v), n);
      INFO("nu=" << v << " n=" << n);
      CHECK(check_boundary_compatibility(P, FaceConvention::Left).ok());
      if (n >= 2) CHECK_FALSE(check_boundary_compatibility(P, FaceConvention::Mirrored).ok());
    }
  }
}

TEST_CASE("boundary frames of the square's cells", "[equivalence]") {
  TruncatedPresheaf sq = standard_shape(Arity(2), 2);
  Frame top = boundary_frame(sq, 2, 0);
  CHECK(top.full());
  CHECK(serialize(top) == "([([0 1] 0) ([2 3] 0)] [0 0])");
  CHECK(serialize(boundary_frame(sq, 0, 0)) == "()");
}

TEST_CASE("conversion errors", "[equivalence][errors]") {
  for (const auto& c : corpus::law_corruptions()) {
    INFO(c.name);
    CHECK(kind_of([&] { to_indexed(c.presheaf); }) == ErrorKind::LawViolation);
  }
  IndexedNuSet sq = to_indexed(standard_shape(Arity(2), 2));
  std::vector<Family> fams = sq.families();
  fams[2].clear();
  CHECK(kind_of([&] { to_fibred(IndexedNuSet(Arity(2), fams)); }) == ErrorKind::ValidationFailure);
  CHECK(kind_of([] { to_fibred(IndexedNuSet(Arity(1))); }) == ErrorKind::ValidationFailure);
}

TEST_CASE("labels survive when globally distinct", "[equivalence]") {
  TruncatedPresheaf sq = standard_shape(Arity(2), 2);
  TruncatedPresheaf back = to_fibred(to_indexed(sq));
  for (int n = 0; n <= 2; ++n) {
    REQUIRE(back.carrier(n).labels);
    std::set<std::string> a(sq.carrier(n).labels->begin(), sq.carrier(n).labels->end());
    std::set<std::string> b(back.carrier(n).labels->begin(), back.carrier(n).labels->end());
    CHECK(a == b);
  }
  // Repeated labels in different fibres are dropped rather than merged.
  IndexedNuSet S = to_indexed(support::load_fibred("parallel"));
  std::vector<Family> fams = S.families();
  for (auto& [key, fibre] : fams[1]) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < fibre.size; ++i) names.push_back("e" + std::to_string(i));
    fibre.labels = names;
  }
  CHECK_FALSE(to_fibred(IndexedNuSet(Arity(2), fams)).carrier(1).labels);
}

TEST_CASE("random instances are deterministic and valid", "[equivalence]") {
  for (int v = 1; v <= 2; ++v)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      IndexedNuSet a = random_indexed(Arity(v), 2, seed);
      CHECK(a == random_indexed(Arity(v), 2, seed));
      CHECK(validate_indexed(a, false).ok());
      CHECK(check_functor_laws(random_presheaf(Arity(v), 2, seed)).ok());
    }
}
