#include <doctest.h>

#include <random>

#include "uiap/fourier.hpp"
#include "uiap/group.hpp"

using namespace uiap;

namespace {

GroupFunction random_function(const FiniteGroup& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  Vec v(g.order);
  for (int i = 0; i < g.order; ++i) v[i] = cxd(dist(rng), dist(rng));
  return GroupFunction{&g, std::move(v)};
}

// independent transform oracle: plain summation using the adjoint for the
// inverse element (unitarity) instead of the inverse table
Mat brute_transform_block(const GroupFunction& f, const Irrep& ir) {
  const int n = f.group->order;
  Mat acc = Mat::Zero(ir.dim, ir.dim);
  for (int x = 0; x < n; ++x) acc += ir.matrices[x].adjoint() * f.values[x];
  return acc / static_cast<double>(n);
}

// independent convolution oracle: substitution z = y^-1 x done the other way
Vec brute_convolve(const GroupFunction& f, const GroupFunction& g) {
  const FiniteGroup& grp = *f.group;
  Vec out = Vec::Zero(grp.order);
  for (int y = 0; y < grp.order; ++y)
    for (int z = 0; z < grp.order; ++z) out[grp.mul(y, z)] += f.values[y] * g.values[z];
  return out / static_cast<double>(grp.order);
}

} // namespace

TEST_SUITE_BEGIN("fourier");

TEST_CASE("transform of elementary functions") {
  SUBCASE("constant one on Z2") {
    const GroupSystem sys = parse_group_spec("Z2");
    const GroupFunction one{sys.group.get(), Vec::Ones(2)};
    const FourierCoefficients c = fourier_transform(one, *sys.dual);
    CHECK(std::abs(c.block("chi0")(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(c.block("chi1")(0, 0)) < 1e-15);
  }
  SUBCASE("the convolution unit transforms to the identity in every block") {
    for (const char* spec : {"Z5", "S3", "Q8"}) {
      const GroupSystem sys = parse_group_spec(spec);
      const FourierCoefficients c = fourier_transform(convolution_unit(*sys.group), *sys.dual);
      for (const auto& b : c.blocks)
        CHECK((b - Mat::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  SUBCASE("class indicator on S3 matches the brute-force oracle") {
    const GroupSystem sys = parse_group_spec("S3");
    const FiniteGroup& g = *sys.group;
    // the transposition class has three elements
    Vec v = Vec::Zero(6);
    int count = 0;
    for (const auto& cls : g.conjugacy_classes)
      if (cls.size() == 3)
        for (int m : cls) {
          v[m] = 1.0;
          ++count;
        }
    REQUIRE(count == 3);
    const GroupFunction f{&g, v};
    const FourierCoefficients c = fourier_transform(f, *sys.dual);
    for (int s = 0; s < sys.dual->size(); ++s) {
      const Mat expect = brute_transform_block(f, sys.dual->irreps[s]);
      CHECK((c.blocks[s] - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("synthesis") {
  SUBCASE("zero blocks give the zero function") {
    const GroupSystem sys = parse_group_spec("D4");
    FourierCoefficients c;
    c.dual = sys.dual.get();
    for (const auto& ir : sys.dual->irreps) c.blocks.push_back(Mat::Zero(ir.dim, ir.dim));
    CHECK(norm_linf(synthesize(c)) == 0.0);
  }
  SUBCASE("identity blocks give the convolution unit") {
    const GroupSystem sys = parse_group_spec("Q8");
    FourierCoefficients c;
    c.dual = sys.dual.get();
    for (const auto& ir : sys.dual->irreps) c.blocks.push_back(Mat::Identity(ir.dim, ir.dim));
    const GroupFunction f = synthesize(c);
    const GroupFunction unit = convolution_unit(*sys.group);
    CHECK((f.values - unit.values).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("round trip on random functions, every catalog family") {
    for (const char* spec : {"Z7", "D4", "D5", "S3", "S4", "Q8", "Z2xS3"}) {
      CAPTURE(spec);
      const GroupSystem sys = parse_group_spec(spec);
      const GroupFunction f = random_function(*sys.group, 17);
      const GroupFunction back = synthesize(fourier_transform(f, *sys.dual));
      CHECK((back.values - f.values).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("convolution") {
  const GroupSystem sys = parse_group_spec("S3");
  const FiniteGroup& g = *sys.group;
  SUBCASE("the convolution unit is a unit") {
    const GroupFunction f = random_function(g, 19);
    const GroupFunction fu = convolve(f, convolution_unit(g));
    const GroupFunction uf = convolve(convolution_unit(g), f);
    CHECK((fu.values - f.values).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((uf.values - f.values).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("convolution theorem with the block order ghat * fhat") {
    const GroupFunction f = random_function(g, 23);
    const GroupFunction h = random_function(g, 29);
    const GroupFunction conv{&g, brute_convolve(f, h)};
    for (int s = 0; s < sys.dual->size(); ++s) {
      const Mat lhs = brute_transform_block(conv, sys.dual->irreps[s]);
      const Mat rhs = brute_transform_block(h, sys.dual->irreps[s]) *
                      brute_transform_block(f, sys.dual->irreps[s]);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
    // and the implementation agrees with the brute-force convolution
    const GroupFunction impl = convolve(f, h);
    CHECK((impl.values - conv.values).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("central functions commute with everything") {
    const GroupFunction chi = character(g, sys.dual->irreps[sys.dual->index_of("s21")]);
    const GroupFunction f = random_function(g, 31);
    const GroupFunction a = convolve(chi, f);
    const GroupFunction b = convolve(f, chi);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("norms") {
  SUBCASE("constants") {
    const GroupSystem sys = parse_group_spec("Z5");
    const GroupFunction f{sys.group.get(), Vec::Constant(5, cxd(-2.0, 0.0))};
    const FunctionNorms n = norms(f);
    CHECK(n.l1 == doctest::Approx(2.0));
    CHECK(n.l2 == doctest::Approx(2.0));
    CHECK(n.linf == doctest::Approx(2.0));
  }
  SUBCASE("ordering l1 <= l2 <= linf") {
    const GroupSystem sys = parse_group_spec("S4");
    const GroupFunction f = random_function(*sys.group, 37);
    const FunctionNorms n = norms(f);
    CHECK(n.l1 <= n.l2 + 1e-12);
    CHECK(n.l2 <= n.linf + 1e-12);
  }
  SUBCASE("Plancherel on S4") {
    const GroupSystem sys = parse_group_spec("S4");
    const GroupFunction f = random_function(*sys.group, 41);
    const FourierCoefficients c = fourier_transform(f, *sys.dual);
    double rhs = 0.0;
    for (int s = 0; s < sys.dual->size(); ++s)
      rhs += sys.dual->irreps[s].dim * c.blocks[s].squaredNorm();
    CHECK(std::abs(norm_l2(f) * norm_l2(f) - rhs) < 1e-9);
  }
  SUBCASE("unimodular characters have every norm equal to one") {
    const GroupSystem sys = parse_group_spec("Z8");
    const GroupFunction chi = character(*sys.group, sys.dual->irreps[3]);
    const FunctionNorms n = norms(chi);
    CHECK(n.l1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.l2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.linf == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("coordinate functions and characters") {
  SUBCASE("abelian coordinate function is the character") {
    const GroupSystem sys = parse_group_spec("Z6");
    const Irrep& ir = sys.dual->irreps[2];
    const GroupFunction u = coordinate_function(*sys.group, ir, 0, 0);
    const GroupFunction chi = character(*sys.group, ir);
    CHECK((u.values - chi.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("transform of u_jk is the scaled matrix unit E_jk / d") {
    for (const char* spec : {"S3", "D4"}) {
      CAPTURE(spec);
      const GroupSystem sys = parse_group_spec(spec);
      int two = -1;
      for (int s = 0; s < sys.dual->size(); ++s)
        if (sys.dual->irreps[s].dim == 2) two = s;
      REQUIRE(two >= 0);
      const Irrep& ir = sys.dual->irreps[two];
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const GroupFunction u = coordinate_function(*sys.group, ir, j, k);
          const FourierCoefficients c = fourier_transform(u, *sys.dual);
          Mat expect = Mat::Zero(2, 2);
          expect(j, k) = 1.0 / ir.dim;
          CHECK((c.blocks[two] - expect).cwiseAbs().maxCoeff() < 1e-12);
          for (int s = 0; s < sys.dual->size(); ++s)
            if (s != two) CHECK(c.blocks[s].cwiseAbs().maxCoeff() < 1e-12);
        }
    }
  }
  SUBCASE("index range is enforced") {
    const GroupSystem sys = parse_group_spec("S3");
    const Irrep& ir = sys.dual->irreps[sys.dual->index_of("s21")];
    CHECK_THROWS_AS(coordinate_function(*sys.group, ir, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(coordinate_function(*sys.group, ir, 0, -1), std::out_of_range);
  }
  SUBCASE("character of the standard irrep of S3 by class") {
    const GroupSystem sys = parse_group_spec("S3");
    const FiniteGroup& g = *sys.group;
    const GroupFunction chi = character(g, sys.dual->irreps[sys.dual->index_of("s21")]);
    for (const auto& cls : g.conjugacy_classes) {
      double expect = 0.0;
      if (cls.size() == 1) expect = 2.0;        // identity
      else if (cls.size() == 2) expect = -1.0;  // 3-cycles
      for (int m : cls) CHECK(std::abs(chi.values[m] - expect) < 1e-13);
    }
  }
}

TEST_CASE("centrality defect") {
  SUBCASE("characters have defect at machine scale") {
    for (const char* spec : {"S3", "S4", "Q8"}) {
      const GroupSystem sys = parse_group_spec(spec);
      for (const auto& ir : sys.dual->irreps)
        CHECK(centrality_defect(character(*sys.group, ir), *sys.dual) < 1e-12);
    }
  }
  SUBCASE("a single non-central element of S3 has a large defect") {
    const GroupSystem sys = parse_group_spec("S3");
    Vec v = Vec::Zero(6);
    for (const auto& cls : sys.group->conjugacy_classes)
      if (cls.size() == 3) v[cls.front()] = 1.0;
    CHECK(centrality_defect(GroupFunction{sys.group.get(), v}, *sys.dual) > 0.1);
  }
  SUBCASE("class functions on Q8 are central") {
    const GroupSystem sys = parse_group_spec("Q8");
    std::mt19937 rng(43);
    std::normal_distribution<double> dist;
    Vec v(8);
    for (const auto& cls : sys.group->conjugacy_classes) {
      const cxd val(dist(rng), dist(rng));
      for (int m : cls) v[m] = val;
    }
    CHECK(centrality_defect(GroupFunction{sys.group.get(), v}, *sys.dual) < 1e-10);
  }
}

TEST_CASE("spectral support") {
  SUBCASE("constants are supported on the trivial irrep") {
    const GroupSystem sys = parse_group_spec("S4");
    const FourierCoefficients c =
        fourier_transform(GroupFunction{sys.group.get(), Vec::Ones(24)}, *sys.dual);
    const SpectralSet s = spectral_support(c, 1e-9);
    CHECK(s.weight == 1);
    CHECK(s.labels(*sys.dual) == std::vector<std::string>{"s4"});
  }
  SUBCASE("the convolution unit is fully supported") {
    const GroupSystem sys = parse_group_spec("D4");
    const FourierCoefficients c = fourier_transform(convolution_unit(*sys.group), *sys.dual);
    CHECK(spectral_support(c, 1e-9).weight == 8);
  }
  SUBCASE("a two-dimensional character has weight four") {
    const GroupSystem sys = parse_group_spec("D4");
    const GroupFunction chi = character(*sys.group, sys.dual->irreps[sys.dual->index_of("rho1")]);
    const SpectralSet s = spectral_support(fourier_transform(chi, *sys.dual), 1e-9);
    CHECK(s.weight == 4);
    CHECK(s.labels(*sys.dual) == std::vector<std::string>{"rho1"});
  }
}

TEST_CASE("translation covariance of the transform") {
  const GroupSystem sys = parse_group_spec("D4");
  const GroupFunction f = random_function(*sys.group, 47);
  const FourierCoefficients base = fourier_transform(f, *sys.dual);
  for (int y : {1, 3, 5}) {
    const FourierCoefficients left = fourier_transform(translate(f, y, Side::Left), *sys.dual);
    const FourierCoefficients right = fourier_transform(translate(f, y, Side::Right), *sys.dual);
    for (int s = 0; s < sys.dual->size(); ++s) {
      CHECK(std::abs(left.blocks[s].norm() - base.blocks[s].norm()) < 1e-12);
      CHECK(std::abs(right.blocks[s].norm() - base.blocks[s].norm()) < 1e-12);
    }
  }
}

TEST_CASE("two-sided translates of coordinate functions stay in the block span") {
  // least-squares residual of l_y r_z u_jk against the span of the u_jk
  const GroupSystem sys = parse_group_spec("S3");
  const int two = sys.dual->index_of("s21");
  const Irrep& ir = sys.dual->irreps[two];
  const int n = sys.group->order;
  Mat span(n, ir.dim * ir.dim);
  int col = 0;
  for (int j = 0; j < ir.dim; ++j)
    for (int k = 0; k < ir.dim; ++k, ++col)
      span.col(col) = coordinate_function(*sys.group, ir, j, k).values;
  const auto qr = span.colPivHouseholderQr();
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      for (int j = 0; j < ir.dim; ++j)
        for (int k = 0; k < ir.dim; ++k) {
          const GroupFunction u = coordinate_function(*sys.group, ir, j, k);
          const GroupFunction t = translate(translate(u, z, Side::Right), y, Side::Left);
          const Vec coeffs = qr.solve(t.values);
          CHECK((span * coeffs - t.values).cwiseAbs().maxCoeff() < 1e-9);
        }
}

TEST_CASE("fixing every coordinate function of a block forces the identity there") {
  // f * u_jk = u_jk for all j,k of sigma  =>  fhat(sigma) = I. The hypothesis
  // is enforced as a linear system on the values of f (no transform involved)
  // by projecting a random function onto its solution set.
  const GroupSystem sys = parse_group_spec("D4");
  const FiniteGroup& g = *sys.group;
  const int n = g.order;
  const int two = sys.dual->index_of("rho1");
  const Irrep& ir = sys.dual->irreps[two];

  Mat C(ir.dim * ir.dim * n, n);
  Vec rhs(C.rows());
  int row = 0;
  for (int j = 0; j < ir.dim; ++j)
    for (int k = 0; k < ir.dim; ++k) {
      const GroupFunction u = coordinate_function(g, ir, j, k);
      for (int x = 0; x < n; ++x, ++row) {
        for (int y = 0; y < n; ++y) C(row, y) = u.values[g.mul(g.inv(y), x)] / static_cast<double>(n);
        rhs[row] = u.values[x];
      }
    }
  const auto cod = C.completeOrthogonalDecomposition();

  std::mt19937 rng(53);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 10; ++trial) {
    Vec f0(n);
    for (int i = 0; i < n; ++i) f0[i] = cxd(dist(rng), dist(rng));
    const Vec f = f0 + cod.solve(rhs - C * f0);
    REQUIRE((C * f - rhs).cwiseAbs().maxCoeff() < 1e-10);  // hypothesis holds

    const GroupFunction ff{&g, f};
    for (int j = 0; j < ir.dim; ++j)
      for (int k = 0; k < ir.dim; ++k) {
        const GroupFunction u = coordinate_function(g, ir, j, k);
        const GroupFunction conv = convolve(ff, u);
        CHECK((conv.values - u.values).cwiseAbs().maxCoeff() < 1e-9);
      }
    const FourierCoefficients check = fourier_transform(ff, *sys.dual);
    CHECK((check.blocks[two] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_SUITE_END();
