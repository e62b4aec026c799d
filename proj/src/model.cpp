#include "pir/model.hpp"

#include <sstream>

namespace pir {

Rational StorageProfile::sum_storage() const {
  Rational total = 0;
  for (const auto& m : budgets) total += m;
  return total;
}

Rational StorageProfile::average_storage() const {
  return sum_storage() / database_count();
}

bool StorageProfile::well_formed() const {
  if (budgets.empty() || message_count < 1) return false;
  for (const auto& m : budgets) {
    if (m < 0 || m > 1) return false;
  }
  return true;
}

Rational PlacementPlan::share(const SubsetId& s) const {
  auto it = shares.find(s);
  return it == shares.end() ? Rational(0) : it->second;
}

Rational PlacementPlan::total_mass() const {
  Rational total = 0;
  for (const auto& [s, a] : shares) total += a;
  return total;
}

Rational PlacementPlan::load(int database) const {
  Rational total = 0;
  for (const auto& [s, a] : shares) {
    if (s.contains(database)) total += a;
  }
  return total;
}

Rational BetaProfile::total() const {
  Rational total = 0;
  for (const auto& b : levels) total += b;
  return total;
}

bool BetaProfile::has_two_consecutive_structure() const {
  int first = -1;
  int count = 0;
  for (int i = 0; i < level_count(); ++i) {
    if (levels[i] != 0) {
      if (count == 0) first = i;
      ++count;
    }
  }
  if (count > 2) return false;
  if (count == 2) {
    // The second nonzero must sit right after the first.
    for (int i = first + 1; i < level_count(); ++i) {
      if (levels[i] != 0) return i == first + 1;
    }
  }
  return true;
}

std::string PlacementViolation::describe() const {
  std::ostringstream out;
  switch (constraint) {
    case PlacementConstraint::kNonnegativity:
      out << "alpha_{" << (subset ? subset->to_string() : "?") << "} < 0 by "
          << format_rational(residual);
      break;
    case PlacementConstraint::kUnitMass:
      out << "total mass off by " << format_rational(residual);
      break;
    case PlacementConstraint::kBudget:
      out << "database " << database << " budget exceeded by " << format_rational(residual);
      break;
  }
  return out.str();
}

ValidationReport validate_placement(const PlacementPlan& plan) {
  ValidationReport report;
  for (const auto& [s, a] : plan.shares) {
    if (a < 0) {
      report.violations.push_back(
          {PlacementConstraint::kNonnegativity, 0, s, -a});
    }
  }
  Rational mass = plan.total_mass();
  if (mass != 1) {
    report.violations.push_back({PlacementConstraint::kUnitMass, 0, std::nullopt, mass - 1});
  }
  for (int n = 1; n <= plan.profile.database_count(); ++n) {
    Rational load = plan.load(n);
    Rational budget = plan.profile.budgets[n - 1];
    if (load > budget) {
      report.violations.push_back({PlacementConstraint::kBudget, n, std::nullopt, load - budget});
    }
  }
  return report;
}

BetaProfile beta_of(const PlacementPlan& plan) {
  BetaProfile beta;
  beta.levels.assign(plan.profile.database_count(), Rational(0));
  for (const auto& [s, a] : plan.shares) beta.levels[s.size() - 1] += a;
  return beta;
}

std::string serialize_plan(const PlacementPlan& plan) {
  std::ostringstream out;
  out << "N=" << plan.profile.database_count() << " K=" << plan.profile.message_count << " m=";
  for (int n = 0; n < plan.profile.database_count(); ++n) {
    if (n) out << ',';
    out << format_rational(plan.profile.budgets[n]);
  }
  out << '\n';
  for (const auto& [s, a] : plan.shares) {
    out << s.to_string() << ' ' << numerator(a) << '/' << denominator(a) << '\n';
  }
  return out.str();
}

std::optional<PlacementPlan> parse_plan(std::istream& in, std::string* error) {
  auto fail = [&](const std::string& msg) -> std::optional<PlacementPlan> {
    if (error) *error = msg;
    return std::nullopt;
  };
  std::string header;
  if (!std::getline(in, header)) return fail("missing header line");
  int n = 0, k = 0;
  std::string mlist;
  {
    std::istringstream hs(header);
    std::string tn, tk, tm;
    hs >> tn >> tk >> tm;
    if (tn.rfind("N=", 0) != 0 || tk.rfind("K=", 0) != 0 || tm.rfind("m=", 0) != 0)
      return fail("malformed header: " + header);
    n = std::atoi(tn.c_str() + 2);
    k = std::atoi(tk.c_str() + 2);
    mlist = tm.substr(2);
  }
  if (n < 1 || n > 16 || k < 1) return fail("bad N or K in header");
  PlacementPlan plan;
  plan.profile.message_count = k;
  {
    std::istringstream ms(mlist);
    std::string token;
    while (std::getline(ms, token, ',')) {
      auto r = parse_rational(token);
      if (!r) return fail("bad budget: " + token);
      plan.profile.budgets.push_back(*r);
    }
  }
  if (plan.profile.database_count() != n) return fail("budget count does not match N");
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos) return fail("malformed share line: " + line);
    auto subset = SubsetId::parse(line.substr(0, space));
    auto value = parse_rational(line.substr(space + 1));
    if (!subset || !value) return fail("malformed share line: " + line);
    for (int m : subset->members()) {
      if (m > n) return fail("subset member exceeds N: " + line);
    }
    plan.shares[*subset] = *value;
  }
  return plan;
}

std::optional<PlacementPlan> parse_plan(const std::string& text, std::string* error) {
  std::istringstream in(text);
  return parse_plan(in, error);
}

}  // namespace pir
