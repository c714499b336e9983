#include <doctest.h>

#include <algorithm>
#include <random>

#include "uiap/fourier.hpp"
#include "uiap/group.hpp"

using namespace uiap;

namespace {

std::vector<int> sorted_dims(const Dual& dual) {
  std::vector<int> dims;
  for (const auto& ir : dual.irreps) dims.push_back(ir.dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

GroupFunction random_function(const FiniteGroup& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  Vec v(g.order);
  for (int i = 0; i < g.order; ++i) v[i] = cxd(dist(rng), dist(rng));
  return GroupFunction{&g, std::move(v)};
}

} // namespace

TEST_SUITE_BEGIN("group");

TEST_CASE("catalog groups verify at 1e-10") {
  for (const char* spec : {"Z1", "Z2", "Z5", "Z12", "Z24", "D3", "D4", "D6", "D8", "S3", "S4",
                           "Q8"}) {
    CAPTURE(spec);
    const GroupSystem sys = parse_group_spec(spec);
    const VerifyReport rep = verify_irrep_system(*sys.group, *sys.dual, 1e-10);
    CHECK_MESSAGE(rep.pass, spec, ": ", rep.summary());
    CHECK(sys.dual->total_weight() == sys.group->order);
  }
}

TEST_CASE("catalog dual dimensions") {
  CHECK(sorted_dims(*parse_group_spec("Z2").dual) == std::vector<int>{1, 1});
  CHECK(sorted_dims(*parse_group_spec("S3").dual) == std::vector<int>{1, 1, 2});
  CHECK(sorted_dims(*parse_group_spec("Q8").dual) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(sorted_dims(*parse_group_spec("S4").dual) == std::vector<int>{1, 1, 2, 3, 3});
  CHECK(sorted_dims(*parse_group_spec("D4").dual) == std::vector<int>{1, 1, 1, 1, 2});
}

TEST_CASE("cyclic characters are the exponential characters") {
  const GroupSystem sys = parse_group_spec("Z6");
  for (int k = 0; k < 6; ++k)
    for (int x = 0; x < 6; ++x) {
      const cxd expect = std::polar(1.0, 2.0 * kPi * k * x / 6.0);
      CHECK(std::abs(sys.dual->irreps[k].matrices[x](0, 0) - expect) < 1e-14);
    }
}

TEST_CASE("unsupported catalog parameters are rejected") {
  CHECK_THROWS_AS(build_catalog_group(GroupFamily::Cyclic, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog_group(GroupFamily::Dihedral, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog_group(GroupFamily::Symmetric, 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("E8"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Q16"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group_spec("Z2x"), std::invalid_argument);
}

TEST_CASE("direct products") {
  SUBCASE("Z2 x Z2 has four one-dimensional irreps") {
    const GroupSystem sys = parse_group_spec("Z2xZ2");
    CHECK(sys.group->order == 4);
    CHECK(sorted_dims(*sys.dual) == std::vector<int>{1, 1, 1, 1});
    CHECK(verify_irrep_system(*sys.group, *sys.dual, 1e-10).pass);
  }
  SUBCASE("Z2 x S3 has dual dimensions 1,1,2,1,1,2") {
    const GroupSystem sys = parse_group_spec("Z2xS3");
    CHECK(sys.group->order == 12);
    CHECK(sorted_dims(*sys.dual) == std::vector<int>{1, 1, 1, 1, 2, 2});
    CHECK(sys.dual->total_weight() == 12);
    CHECK(verify_irrep_system(*sys.group, *sys.dual, 1e-10).pass);
  }
  SUBCASE("S3 x S3 contains a four-dimensional tensor block") {
    const GroupSystem sys = parse_group_spec("S3xS3");
    CHECK(sys.group->order == 36);
    const auto dims = sorted_dims(*sys.dual);
    CHECK(std::count(dims.begin(), dims.end(), 4) == 1);
    CHECK(verify_irrep_system(*sys.group, *sys.dual, 1e-10).pass);
  }
}

TEST_CASE("translations") {
  const GroupSystem sys = parse_group_spec("Z4");
  const FiniteGroup& g = *sys.group;

  SUBCASE("left translation by the generator shifts as x - y") {
    Vec v(4);
    v << 1.0, 2.0, 3.0, 4.0;
    const GroupFunction f{&g, v};
    const GroupFunction lf = translate(f, 1, Side::Left);
    CHECK(lf.values[0] == cxd(4.0));
    CHECK(lf.values[1] == cxd(1.0));
    CHECK(lf.values[2] == cxd(2.0));
    CHECK(lf.values[3] == cxd(3.0));
  }
  SUBCASE("translation by the identity is the identity") {
    const GroupFunction f = random_function(g, 7);
    const GroupFunction lf = translate(f, g.identity, Side::Left);
    const GroupFunction rf = translate(f, g.identity, Side::Right);
    CHECK((lf.values - f.values).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rf.values - f.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("translations preserve the l1 norm") {
    const GroupSystem s4 = parse_group_spec("S4");
    const GroupFunction f = random_function(*s4.group, 11);
    for (int y : {0, 3, 7, 23}) {
      CHECK(norm_l1(translate(f, y, Side::Left)) == doctest::Approx(norm_l1(f)).epsilon(1e-14));
      CHECK(norm_l1(translate(f, y, Side::Right)) == doctest::Approx(norm_l1(f)).epsilon(1e-14));
    }
  }
  SUBCASE("left and right translations commute exactly") {
    const GroupSystem s3 = parse_group_spec("S3");
    const GroupFunction f = random_function(*s3.group, 13);
    for (int y = 0; y < 6; ++y)
      for (int z = 0; z < 6; ++z) {
        const GroupFunction a = translate(translate(f, z, Side::Right), y, Side::Left);
        const GroupFunction b = translate(translate(f, y, Side::Left), z, Side::Right);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
      }
  }
}

TEST_CASE("verify_irrep_system flags injected faults") {
  SUBCASE("perturbing one matrix shows up as a unitarity deviation of that size") {
    GroupSystem sys = parse_group_spec("S3");
    Dual broken = *sys.dual;
    broken.group = sys.group.get();
    broken.irreps[2].matrices[3](0, 0) += 1e-3;
    const VerifyReport rep = verify_irrep_system(*sys.group, broken, 1e-10);
    CHECK_FALSE(rep.pass);
    double unit_dev = 0.0;
    for (const auto& c : rep.checks)
      if (c.name == "unitarity") unit_dev = c.deviation;
    CHECK(unit_dev > 1e-4);
    CHECK(unit_dev < 1e-2);
  }
  SUBCASE("dropping an irrep is a structural completeness failure") {
    GroupSystem sys = parse_group_spec("Q8");
    Dual broken = *sys.dual;
    broken.group = sys.group.get();
    broken.irreps.pop_back();
    const VerifyReport rep = verify_irrep_system(*sys.group, broken, 1e-10);
    CHECK_FALSE(rep.pass);
    REQUIRE_FALSE(rep.structural_errors.empty());
    CHECK(rep.structural_errors.front().find("completeness") != std::string::npos);
  }
}

TEST_CASE("conjugacy classes of the catalog") {
  const GroupSystem q8 = parse_group_spec("Q8");
  CHECK(q8.group->conjugacy_classes.size() == 5);
  const GroupSystem s3 = parse_group_spec("S3");
  CHECK(s3.group->conjugacy_classes.size() == 3);
  std::vector<std::size_t> sizes;
  for (const auto& c : s3.group->conjugacy_classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("custom group documents round-trip and are validated") {
  const GroupSystem sys = parse_group_spec("S3");
  const std::string doc = export_group_json(*sys.group, *sys.dual);
  const GroupSystem back = import_group_json(doc);
  CHECK(back.group->order == 6);
  CHECK(back.group->cayley == sys.group->cayley);
  CHECK(verify_irrep_system(*back.group, *back.dual, 1e-10).pass);

  SUBCASE("missing fields are rejected") {
    CHECK_THROWS_AS(import_group_json("{\"name\": \"x\"}"), std::invalid_argument);
    CHECK_THROWS_AS(import_group_json("not json"), std::invalid_argument);
  }
  SUBCASE("a perturbed irrep fails verification on import") {
    std::string bad = doc;
    const auto pos = bad.find("0.5");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 3, "0.51");
    CHECK_THROWS_AS(import_group_json(bad), std::invalid_argument);
  }
  SUBCASE("a non-group table is rejected") {
    // order-2 table with no inverse structure
    const std::string bad = R"({"name":"bad","order":2,"cayley":[0,0,0,0],"irreps":[]})";
    CHECK_THROWS_AS(import_group_json(bad), std::invalid_argument);
  }
}

TEST_SUITE_END();
