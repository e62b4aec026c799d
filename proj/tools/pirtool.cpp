// pirtool: capacity, placement, retrieval, sweep and audit front end.
//
// Exit codes: 0 ok, 1 usage error, 2 infeasible (m_s < 1), 3 protocol or
// decode error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pir/capacity.hpp"
#include "pir/model.hpp"
#include "pir/placement.hpp"
#include "pir/profile_gen.hpp"
#include "pir/scheme.hpp"
#include "pir/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitProtocol = 3;

std::vector<pir::Rational> parse_budgets(const std::string& list) {
  std::vector<pir::Rational> out;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    auto r = pir::parse_rational(token);
    if (!r) throw CLI::ValidationError("--m", "not an exact rational: " + token);
    out.push_back(*r);
  }
  if (out.empty()) throw CLI::ValidationError("--m", "empty budget list");
  return out;
}

pir::StorageProfile profile_from_flags(const std::string& m_list, int k) {
  pir::StorageProfile profile;
  profile.budgets = parse_budgets(m_list);
  profile.message_count = k;
  if (!profile.well_formed())
    throw CLI::ValidationError("--m/--k", "profile must have K >= 1 and budgets in [0,1]");
  return profile;
}

std::string regime_name(const pir::Rational& ms) {
  if (denominator(ms) == 1) return "m_s=" + pir::format_rational(ms);
  pir::Integer j = pir::Integer(numerator(ms) / denominator(ms)) + 1;
  return pir::Integer(j - 1).str() + "<=m_s<=" + j.str();
}

std::string beta_text(const pir::BetaProfile& beta) {
  std::string out = "(";
  for (int i = 0; i < beta.level_count(); ++i) {
    if (i) out += ',';
    out += pir::format_rational(beta.levels[i]);
  }
  return out + ")";
}

int cmd_capacity(const std::string& m_list, int k) {
  auto profile = profile_from_flags(m_list, k);
  auto beta = pir::solve_relaxed(profile);
  if (!beta) {
    std::cout << "infeasible: m_s=" << pir::format_rational(profile.sum_storage())
              << " < 1\n";
    return kExitInfeasible;
  }
  pir::Rational cost = pir::relaxed_cost(*beta, k);
  std::cout << "D*=" << pir::format_rational(cost) << " (" << pir::to_double(cost)
            << ") (regime: " << regime_name(profile.sum_storage())
            << ", beta=" << beta_text(*beta) << ")\n";
  return kExitOk;
}

int cmd_place(const std::string& m_list, int k, const std::string& out_path) {
  auto profile = profile_from_flags(m_list, k);
  auto beta = pir::solve_relaxed(profile);
  if (!beta) {
    std::cout << "infeasible: m_s=" << pir::format_rational(profile.sum_storage())
              << " < 1\n";
    return kExitInfeasible;
  }
  pir::PlacementPlan plan;
  if (profile.database_count() == 3) {
    plan = *pir::place_n3_table(profile);
  } else {
    auto lifted = pir::lift_beta(profile, *beta);
    if (std::holds_alternative<pir::FarkasCertificate>(lifted)) {
      std::cerr << "error: lifting produced a Farkas certificate for a valid profile\n";
      return kExitProtocol;
    }
    plan = std::get<pir::PlacementPlan>(lifted);
  }
  auto report = pir::validate_placement(plan);
  if (!report.ok()) {
    std::cerr << "error: produced plan fails validation\n";
    return kExitProtocol;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  out << pir::serialize_plan(plan);
  pir::Rational cost = pir::relaxed_cost(pir::beta_of(plan), k);
  std::cout << "wrote " << out_path << "; D*=" << pir::format_rational(cost) << " ("
            << pir::to_double(cost) << ")\n";
  return kExitOk;
}

int cmd_retrieve(const std::string& plan_path, int theta, std::uint64_t seed,
                 const std::string& messages_path, const std::string& transcript_path,
                 long long base_length) {
  std::ifstream in(plan_path);
  if (!in) {
    std::cerr << "error: cannot read " << plan_path << "\n";
    return kExitUsage;
  }
  std::string error;
  auto plan = pir::parse_plan(in, &error);
  if (!plan) {
    std::cerr << "error: bad plan file: " << error << "\n";
    return kExitUsage;
  }
  if (!pir::validate_placement(*plan).ok()) {
    std::cerr << "error: plan file fails placement validation\n";
    return kExitProtocol;
  }
  const int k = plan->profile.message_count;
  if (theta < 1 || theta > k) {
    std::cerr << "error: theta out of [1," << k << "]\n";
    return kExitUsage;
  }
  try {
    auto layout = pir::make_layout(*plan, base_length);
    std::vector<std::vector<pir::Symbol>> messages(k);
    if (messages_path.empty()) {
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull);
      for (auto& msg : messages) {
        msg.resize(layout.total_length);
        for (auto& s : msg) s = static_cast<pir::Symbol>(rng());
      }
    } else {
      std::ifstream min(messages_path, std::ios::binary);
      if (!min) {
        std::cerr << "error: cannot read " << messages_path << "\n";
        return kExitUsage;
      }
      for (auto& msg : messages) {
        msg.resize(layout.total_length);
        min.read(reinterpret_cast<char*>(msg.data()), layout.total_length);
        if (min.gcount() != layout.total_length) {
          std::cerr << "error: messages file shorter than K*L = " << k * layout.total_length
                    << " bytes\n";
          return kExitUsage;
        }
      }
    }
    auto databases = pir::sim::provision(*plan, layout, messages);
    auto outcome = pir::sim::run_retrieval(databases, *plan, layout, theta, seed);
    if (!transcript_path.empty()) {
      std::ofstream tout(transcript_path);
      tout << outcome.transcript.to_text();
    }
    bool ok = outcome.message == messages[theta - 1];
    pir::Rational ratio(outcome.transcript.download_total(), layout.total_length);
    std::cout << "downloaded/L = " << numerator(ratio) << "/" << denominator(ratio)
              << ", decode " << (ok ? "OK" : "MISMATCH") << "\n";
    return ok ? kExitOk : kExitProtocol;
  } catch (const pir::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const pir::DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const pir::sim::ProvisionError& e) {
    std::cerr << "provisioning error: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const pir::LayoutSizeError& e) {
    std::cerr << "layout error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_sweep(int n, int k, int grid, int profiles, std::uint64_t seed,
              const std::string& out_path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitUsage;
    }
    out = &file;
  }
  std::mt19937_64 rng(seed);
  *out << "m_s,profile,D_hetero,D_homog,equal\n";
  for (int g = 0; g < grid; ++g) {
    pir::Rational mu(g, grid - 1);
    pir::Rational ms = mu * n;
    for (int p = 0; p < profiles; ++p) {
      auto profile = pir::random_profile_with_sum(rng, n, k, ms);
      auto homog = pir::homogeneous_capacity(mu, n, k);
      auto hetero = pir::solve_lp(profile);
      if (!homog || !hetero) {
        *out << pir::format_rational(ms) << ',' << p << ",infeasible,infeasible,true\n";
        continue;
      }
      bool equal = hetero->second.download_cost == homog->download_cost;
      *out << pir::format_rational(ms) << ',' << p << ','
           << pir::format_rational(hetero->second.download_cost) << ','
           << pir::format_rational(homog->download_cost) << ',' << (equal ? "true" : "false")
           << "\n";
    }
  }
  return kExitOk;
}

int cmd_audit(int ell, int k, const std::string& mode, int trials, std::uint64_t seed,
              bool broken) {
  if (ell < 1 || ell > 16 || k < 1) {
    std::cerr << "error: need 1 <= ell <= 16 and K >= 1\n";
    return kExitUsage;
  }
  std::vector<int> members(ell);
  for (int i = 0; i < ell; ++i) members[i] = i + 1;
  auto set = pir::SubsetId::from_members(members);
  long long block = 1;
  for (int i = 0; i < k; ++i) block *= ell;
  pir::PartitionLayout layout;
  layout.lengths[set] = block;
  layout.total_length = block;
  pir::SchemeOptions options;
  options.skip_nondesired_singletons = broken;
  auto report = pir::sim::audit_privacy(
      layout, set, k, mode == "sampled" ? pir::sim::AuditMode::kSampled : pir::sim::AuditMode::kExhaustive,
      trials, seed, options);
  std::cout << "audit ell=" << ell << " K=" << k << " mode=" << mode
            << (broken ? " variant=broken" : "") << ": " << report.summary() << "\n";
  return report.passed ? kExitOk : kExitProtocol;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous-storage PIR toolkit"};
  app.require_subcommand(1);

  std::string m_list, out_path, plan_path, messages_path, transcript_path, mode = "exhaustive";
  int k = 3, theta = 1, n = 3, grid = 11, profiles = 5, trials = 200, ell = 2;
  std::uint64_t seed = 1;
  long long base_length = 1;
  bool broken = false;

  auto* capacity = app.add_subcommand("capacity", "Optimal normalized download cost D*");
  capacity->add_option("--m", m_list, "budgets, e.g. 9/10,6/10,3/10")->required();
  capacity->add_option("--k", k, "number of messages K")->required();

  auto* place = app.add_subcommand("place", "Write an optimal placement plan");
  place->add_option("--m", m_list)->required();
  place->add_option("--k", k)->required();
  place->add_option("--out", out_path, "plan file path")->required();

  auto* retrieve = app.add_subcommand("retrieve", "Simulated end-to-end retrieval");
  retrieve->add_option("--plan", plan_path)->required();
  retrieve->add_option("--theta", theta)->required();
  retrieve->add_option("--seed", seed);
  retrieve->add_option("--messages", messages_path, "raw K*L bytes; random if omitted");
  retrieve->add_option("--transcript", transcript_path, "transcript output path");
  retrieve->add_option("--base", base_length, "layout base length multiplier");

  auto* sweep = app.add_subcommand("sweep", "Heterogeneous vs homogeneous cost CSV");
  sweep->add_option("--n", n)->required();
  sweep->add_option("--k", k)->required();
  sweep->add_option("--grid", grid)->check(CLI::Range(2, 10000));
  sweep->add_option("--profiles", profiles)->check(CLI::Range(1, 100000));
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out_path, "CSV path; stdout if omitted");

  auto* audit = app.add_subcommand("audit", "Privacy audit for one replication set");
  audit->add_option("--ell", ell)->required();
  audit->add_option("--k", k)->required();
  audit->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  audit->add_option("--trials", trials);
  audit->add_option("--seed", seed);
  audit->add_flag("--broken", broken, "audit the deliberately broken scheme variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  try {
    if (capacity->parsed()) return cmd_capacity(m_list, k);
    if (place->parsed()) return cmd_place(m_list, k, out_path);
    if (retrieve->parsed())
      return cmd_retrieve(plan_path, theta, seed, messages_path, transcript_path, base_length);
    if (sweep->parsed()) return cmd_sweep(n, k, grid, profiles, seed, out_path);
    if (audit->parsed()) return cmd_audit(ell, k, mode, trials, seed, broken);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
