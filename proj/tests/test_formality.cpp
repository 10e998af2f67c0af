#include "almab/cohomology.hpp"
#include "almab/formality.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

using almab::MinimalModel;
using almab::Multivector;
using almab::Polynomial;
using almab::Rational;
namespace ts = testing_support;

namespace {

using MV = Multivector<Rational>;

/// Parses "Dname = rhs" lines into a map.
std::map<std::string, std::string> dump_lines(const std::string& dump) {
  std::map<std::string, std::string> out;
  std::istringstream in(dump);
  std::string line;
  const std::regex re(R"(^D(\S+) = (.*)$)");
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, re)) out[m[1]] = m[2];
  }
  return out;
}

/// Checks the shape "DA = 0, Dp = e*A, Dq = p*A, all others 0" up to renaming,
/// with rho(q), rho(p), rho(e) = alpha^1, alpha^2, alpha^3.
void expect_jordan_chain_dump(const almab::TwistedModel& tm, int generators) {
  const auto lines = dump_lines(almab::total_model_dump(tm));
  ASSERT_EQ(static_cast<int>(lines.size()), generators + 1);
  EXPECT_EQ(lines.at("A"), "0");
  std::map<std::string, std::string> twisted;
  for (const auto& [name, rhs] : lines) {
    if (rhs == "0") continue;
    ASSERT_EQ(rhs.substr(rhs.size() - 2), "*A") << name << " = " << rhs;
    // sign flips are generator renamings
    std::string target = rhs.substr(0, rhs.size() - 2);
    if (target.front() == '-') target.erase(0, 1);
    twisted[name] = target;
  }
  ASSERT_EQ(twisted.size(), 2u);
  // q -> p -> e
  std::string q, p;
  for (const auto& [name, target] : twisted) {
    if (twisted.count(target)) {
      q = name;
      p = target;
    }
  }
  ASSERT_FALSE(q.empty());
  const std::string e = twisted.at(p);
  EXPECT_EQ(lines.at(e), "0");
  const int n = tm.base().fiber_dim();
  auto rho_of = [&](const std::string& name) {
    for (int id = 0; id < tm.base().size(); ++id) {
      if (tm.base().name(id) == name) return tm.base().rho(id);
    }
    return MV(n, 1);
  };
  EXPECT_EQ(rho_of(q), MV::monomial(n, {1}));
  EXPECT_EQ(rho_of(p), MV::monomial(n, {2}));
  EXPECT_EQ(rho_of(e), MV::monomial(n, {3}));
}

TEST(TotalModel, S6DumpIsJordanChain) {
  const auto spec = ts::load_fixture("s6.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 2), spec);
  expect_jordan_chain_dump(tm, 5);
  EXPECT_TRUE(almab::twisted_differential_squares_to_zero(tm));
  EXPECT_FALSE(tm.twist().any_ambiguous());
}

TEST(TotalModel, S8DegreeOneTruncation) {
  const auto spec = ts::load_fixture("s8.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 1), spec);
  expect_jordan_chain_dump(tm, 3);
}

TEST(TotalModel, TorusHasZeroTwist) {
  const auto spec = ts::load_fixture("torus4.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 3), spec);
  EXPECT_TRUE(tm.twist().is_zero());
  for (const auto& [name, rhs] : dump_lines(almab::total_model_dump(tm))) EXPECT_EQ(rhs, "0") << name;
}

TEST(TotalModel, RealizationSendsAToBase) {
  const auto spec = ts::load_fixture("s6.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 2), spec);
  EXPECT_EQ(tm.realize(Polynomial::generator(almab::TwistedModel::kA), 1), MV::monomial(6, {6}));
  // tau is a chain map into the CE complex of the modification on generators
  for (int id = 0; id < tm.algebra().size(); ++id) {
    const int deg = tm.algebra().generator(id).degree;
    const MV image = tm.realize(Polynomial::generator(id), deg);
    const MV d_image = tm.realize(tm.D_of_generator(id), deg + 1);
    EXPECT_EQ(almab::ce_differential(spec, image.cast<almab::ScalarLC>()), d_image.cast<almab::ScalarLC>()) << id;
  }
}

TEST(Verdict, S6NotOneFormal) {
  const auto spec = ts::load_fixture("s6.json");
  const auto v = almab::k_formality(spec, 1, 2);
  EXPECT_FALSE(v.pass());
  ASSERT_TRUE(v.first_failure());
  EXPECT_EQ(*v.first_failure(), 1);
  const auto& deg1 = v.degrees.front();
  ASSERT_TRUE(deg1.witness);
  const auto model = almab::model_of_U(spec, 2);
  EXPECT_TRUE(model.d(*deg1.witness).is_zero());
  EXPECT_FALSE(deg1.witness_twist.is_zero());
  EXPECT_NE(v.summary().find("not 1-formal"), std::string::npos);
  EXPECT_NE(v.summary().find("model bound 2"), std::string::npos);
}

TEST(Verdict, S8NotOneFormalWitnessIsTopOfChain) {
  const auto spec = ts::load_fixture("s8.json");
  const auto model = almab::model_of_U(spec, 1);
  const auto tm = almab::twisted_model(model, spec);
  const auto v = almab::k_formality(tm, 1);
  EXPECT_EQ(v.first_failure(), std::optional<int>(1));
  const auto& w = *v.degrees.front().witness;
  // theta(witness) is not closed under theta: witness is the z of "Dz = yA"
  EXPECT_FALSE(almab::apply_twist(model, tm.twist(), w).is_zero());
  EXPECT_FALSE(almab::apply_twist(model, tm.twist(), almab::apply_twist(model, tm.twist(), w)).is_zero());
  EXPECT_EQ(model.realize(w, 1), MV::monomial(7, {1}));
}

TEST(Verdict, TorusFormalThroughBound) {
  const auto v = almab::k_formality(ts::load_fixture("torus4.json"), 3);
  EXPECT_TRUE(v.pass());
  EXPECT_EQ(v.max_checked_degree, 3);
  EXPECT_NE(v.summary().find("through degree 3"), std::string::npos);
}

TEST(Verdict, HeisenbergNotOneFormal) {
  const auto spec = ts::load_fixture("heisenberg3.json");
  const auto v = almab::k_formality(spec, 2);
  EXPECT_EQ(v.first_failure(), std::optional<int>(1));
  EXPECT_TRUE(almab::degree_one_predicts_failure(spec));
}

TEST(Verdict, KAboveBoundThrows) {
  const auto spec = ts::load_fixture("s6.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 2), spec);
  EXPECT_THROW(almab::k_formality(tm, 3), std::out_of_range);
}

TEST(FormalityProperty, TwistedDifferentialSquaresToZero) {
  std::mt19937 rng(91);
  for (int t = 0; t < 100; ++t) {
    ts::RandomSpecOptions o;
    o.max_n = 5;
    const auto spec = ts::random_spec(rng, o);
    const int bound = ts::uniform(rng, 1, 3);
    const MinimalModel model = almab::model_of_U(spec, bound);
    const auto twist = almab::twist_derivation(model, spec);
    const std::string label = almab::spec_to_json(spec).dump();
    EXPECT_TRUE(almab::twist_commutes_with_d(model, twist)) << label;
    EXPECT_TRUE(almab::twist_realizes_nilpotent(model, twist, almab::nilpotent_log(spec))) << label;
    EXPECT_TRUE(almab::twist_is_nilpotent(model, twist, bound)) << label;
    const almab::TwistedModel tm(model, twist);
    EXPECT_TRUE(almab::twisted_differential_squares_to_zero(tm)) << label;
  }
}

TEST(FormalityProperty, DegreeOneAgreesWithIndependentRestatement) {
  std::mt19937 rng(92);
  for (int t = 0; t < 100; ++t) {
    const auto spec = ts::random_spec(rng);
    const auto v = almab::k_formality(spec, 1);
    // restated from scratch: N^t nonzero on U^1
    bool moves = false;
    for (const auto& x : almab::compute_U(spec, 1)) {
      if (!almab::derivation_apply(almab::nilpotent_log(spec), x).is_zero()) moves = true;
    }
    EXPECT_EQ(!v.pass(), moves) << almab::spec_to_json(spec).dump();
    EXPECT_EQ(almab::degree_one_predicts_failure(spec), moves);
  }
}

TEST(FormalityProperty, ProductClosure) {
  std::mt19937 rng(93);
  int checked = 0;
  for (int t = 0; t < 3000 && checked < 100; ++t) {
    const auto spec = ts::random_spec(rng);
    const int bound = ts::uniform(rng, 2, 3);
    const MinimalModel model = almab::model_of_U(spec, bound);
    const almab::TwistedModel tm(model, almab::twist_derivation(model, spec));
    const auto v = almab::k_formality(tm, bound);
    if (!v.pass()) continue;
    ++checked;
    std::vector<int> closed;
    for (int id = 0; id < model.size(); ++id) {
      if (model.closed(id)) closed.push_back(id);
    }
    if (closed.empty()) continue;
    const int a = ts::pick(rng, closed), b = ts::pick(rng, closed);
    const Polynomial prod = model.algebra().multiply(Polynomial::generator(a), Polynomial::generator(b));
    EXPECT_TRUE(tm.D(tm.embed(prod)).is_zero());
  }
  EXPECT_GE(checked, 100);
}

TEST(TotalModelJson, ListsEveryGenerator) {
  const auto spec = ts::load_fixture("s8.json");
  const auto tm = almab::twisted_model(almab::model_of_U(spec, 3), spec);
  const auto doc = almab::total_model_to_json(tm);
  EXPECT_EQ(doc.at("generators").size(), static_cast<std::size_t>(tm.algebra().size()));
  EXPECT_EQ(doc.at("dump").get<std::string>(), almab::total_model_dump(tm));
}

}  // namespace
