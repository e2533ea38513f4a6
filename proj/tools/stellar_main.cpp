// stellar command line: Majorana decomposition, reconstruction, transition
// tables, embedding verification and measurement-cascade simulation.
//
// Exit codes: 0 success (and, for `equiv`, every record passed);
//             1 verification failures; 2 bad input or parse error;
//             3 round-trip self-check below tolerance; 4 capacity exceeded.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stellar/aerts.hpp"
#include "stellar/cascade.hpp"
#include "stellar/io.hpp"
#include "stellar/majorana.hpp"
#include "stellar/rng.hpp"
#include "stellar/spin.hpp"
#include "stellar/symmetric.hpp"
#include "stellar/wigner.hpp"

#include "json.hpp"

namespace {

using namespace stellar;

constexpr int kExitFailures = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitSelfCheck = 3;
constexpr int kExitCapacity = 4;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    io::write_text_file(out_path, content);
}

Real to_radians(Real value, bool degrees) {
  return degrees ? value * kPi / 180 : value;
}

struct DecomposeOpts {
  std::string in, out;
  Real tol = 1e-8;
};

int run_decompose(const DecomposeOpts& o) {
  const SpinState state = io::read_state(o.in);
  const Constellation c = state_to_constellation(state);
  const Real overlap = ray_overlap(state, constellation_to_state(c));
  if (overlap < 1 - o.tol) {
    std::cerr << "decompose: round-trip overlap " << overlap
              << " below 1 - tol\n";
    return kExitSelfCheck;
  }
  emit(o.out, io::constellation_text(c, overlap));
  return 0;
}

int run_reconstruct(const DecomposeOpts& o) {
  const Constellation c = io::read_constellation(o.in);
  const SpinState state = constellation_to_state(c);
  const Real overlap =
      ray_overlap(state, constellation_to_state(state_to_constellation(state)));
  if (overlap < 1 - o.tol) {
    std::cerr << "reconstruct: round-trip overlap " << overlap
              << " below 1 - tol\n";
    return kExitSelfCheck;
  }
  emit(o.out, io::state_text(state, overlap));
  return 0;
}

struct TransprobOpts {
  int twice_s = 1;
  std::optional<Real> beta;
  int beta_steps = 25;
  std::optional<int> twice_m, twice_m_prime;
  std::string out, format = "json";
  bool degrees = false;
};

int run_transprob(const TransprobOpts& o) {
  const Spin spin(o.twice_s);
  std::vector<Real> betas;
  if (o.beta) {
    betas.push_back(to_radians(*o.beta, o.degrees));
  } else {
    for (int k = 0; k < o.beta_steps; ++k)
      betas.push_back(o.beta_steps == 1 ? 0.0 : kPi * k / (o.beta_steps - 1));
  }
  std::vector<MagneticQuantumNumber> rows, cols;
  for (MagneticQuantumNumber m : spin.magnetic_numbers()) {
    if (!o.twice_m || m.twice_m == *o.twice_m) rows.push_back(m);
    if (!o.twice_m_prime || m.twice_m == *o.twice_m_prime) cols.push_back(m);
  }
  if (rows.empty() || cols.empty())
    throw std::domain_error("transprob: --m/--m-prime not valid for this spin");

  if (o.format == "csv") {
    std::ostringstream text;
    text.precision(17);
    text << "beta,twice_m,twice_m_prime,probability\n";
    for (Real b : betas)
      for (MagneticQuantumNumber m : rows)
        for (MagneticQuantumNumber mp : cols)
          text << b << ',' << m.twice_m << ',' << mp.twice_m << ','
               << coherent_transition_closed_form(spin, m, mp, b) << '\n';
    emit(o.out, text.str());
    return 0;
  }
  nlohmann::json tables = nlohmann::json::array();
  for (Real b : betas) {
    nlohmann::json table = nlohmann::json::array();
    for (MagneticQuantumNumber m : rows) {
      nlohmann::json row = nlohmann::json::array();
      for (MagneticQuantumNumber mp : cols)
        row.push_back(coherent_transition_closed_form(spin, m, mp, b));
      table.push_back(row);
    }
    tables.push_back(table);
  }
  nlohmann::json tm = nlohmann::json::array(), tmp = nlohmann::json::array();
  for (MagneticQuantumNumber m : rows) tm.push_back(m.twice_m);
  for (MagneticQuantumNumber mp : cols) tmp.push_back(mp.twice_m);
  const nlohmann::json j{{"schema", io::kSchemaVersion},
                         {"twice_s", o.twice_s},
                         {"betas", betas},
                         {"twice_m", tm},
                         {"twice_m_prime", tmp},
                         {"tables", tables}};
  emit(o.out, j.dump(2) + "\n");
  return 0;
}

struct EquivOpts {
  int twice_s = 2;
  int twice_s_max = 0;  // when > 0, sweep 1..max
  int samples = 20;
  std::uint64_t seed = 12345;
  Real tol = 1e-9;
  std::string out, format = "json";
};

int run_equiv(const EquivOpts& o) {
  const int lo = o.twice_s_max > 0 ? 1 : o.twice_s;
  const int hi = o.twice_s_max > 0 ? o.twice_s_max : o.twice_s;
  if (hi > 8) throw capacity_error("equiv: 2S > 8");
  if (o.tol < 0) throw std::domain_error("equiv: tol must be >= 0");

  RngStream rng(o.seed);
  std::vector<EquivalenceReport> records;
  for (int ts = lo; ts <= hi; ++ts) {
    const Spin spin(ts);
    for (int k = 0; k < o.samples; ++k) {
      const Real alpha = 2 * kPi * rng.next_unit();
      const Real beta = kPi * rng.next_unit();
      for (MagneticQuantumNumber m : spin.magnetic_numbers())
        for (MagneticQuantumNumber mp : spin.magnetic_numbers())
          records.push_back(verify_equivalence(spin, m, mp, alpha, beta, o.tol));
    }
  }
  emit(o.out, o.format == "csv" ? io::equivalence_csv(records)
                                : io::equivalence_json(records));
  for (const EquivalenceReport& r : records)
    if (!r.pass) return kExitFailures;
  return 0;
}

struct SimulateOpts {
  std::string mode;  // quantum | classical
  int twice_s = 1;
  std::optional<int> twice_m;
  std::string state_path;
  Real alpha = 0, beta = 0;
  long trials = 100000;
  std::uint64_t seed = 12345;
  std::string out, format = "json";
  bool degrees = false;
};

int run_simulate(const SimulateOpts& o) {
  io::SimulationReport rep;
  rep.mode = o.mode;
  rep.alpha = to_radians(o.alpha, o.degrees);
  rep.beta = to_radians(o.beta, o.degrees);
  rep.trials = o.trials;
  rep.seed = o.seed;

  std::optional<SymmetricTensorState> initial;
  if (!o.state_path.empty()) {
    const SpinState s = io::read_state(o.state_path);
    initial = embed_state(s);
    rep.coherent_input = false;
    rep.amplitudes = s.amplitudes();
    rep.twice_s = s.spin().twice();
  } else if (o.twice_m) {
    const Spin spin(o.twice_s);
    initial = embed_coherent(spin, MagneticQuantumNumber{*o.twice_m});
    rep.coherent_input = true;
    rep.twice_m = *o.twice_m;
    rep.twice_s = o.twice_s;
  } else {
    throw std::domain_error("simulate: give either --m or --state");
  }

  rep.exact = exact_cascade_distribution(*initial, rep.alpha, rep.beta);
  rep.histogram.assign(rep.exact.size(), 0);

  RngStream root(o.seed);
  long lambda_draws = 0;
  for (long t = 0; t < o.trials; ++t) {
    RngStream trial = root.substream(static_cast<std::uint64_t>(t));
    const CascadeResult r =
        o.mode == "classical"
            ? classical_cascade(*initial, rep.alpha, rep.beta, trial,
                                &lambda_draws)
            : run_cascade(*initial, rep.alpha, rep.beta, trial);
    ++rep.histogram[static_cast<std::size_t>((r.twice_m_prime + rep.twice_s) / 2)];
  }
  rep.lambda_draws = lambda_draws;
  for (std::size_t k = 0; k < rep.exact.size(); ++k)
    rep.max_abs_deviation = std::max(
        rep.max_abs_deviation,
        std::abs(static_cast<Real>(rep.histogram[k]) / static_cast<Real>(o.trials) -
                 rep.exact[k]));

  emit(o.out, o.format == "csv" ? io::simulation_csv(rep)
                                : io::simulation_json(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stellar: spin-S states as 2S sphere points, symmetrized tensor "
      "embeddings, and sequential measurement cascades"};
  app.require_subcommand(1);

  DecomposeOpts dec;
  CLI::App* cmd_dec = app.add_subcommand(
      "decompose", "State file -> constellation file (2S sphere points)");
  cmd_dec->add_option("--in", dec.in, "State JSON file")->required();
  cmd_dec->add_option("--out", dec.out, "Output path (default: stdout)");
  cmd_dec->add_option("--tol", dec.tol,
                      "Round-trip overlap self-check tolerance");

  DecomposeOpts rec;
  CLI::App* cmd_rec = app.add_subcommand(
      "reconstruct", "Constellation file -> state file");
  cmd_rec->add_option("--in", rec.in, "Constellation JSON file")->required();
  cmd_rec->add_option("--out", rec.out, "Output path (default: stdout)");
  cmd_rec->add_option("--tol", rec.tol,
                      "Round-trip overlap self-check tolerance");

  TransprobOpts tp;
  CLI::App* cmd_tp = app.add_subcommand(
      "transprob",
      "Transition probability tables P(M -> M') over a beta grid.  CSV "
      "columns: beta,twice_m,twice_m_prime,probability");
  cmd_tp->add_option("--spin-twice", tp.twice_s, "2S")->required()
      ->check(CLI::Range(1, 20));
  cmd_tp->add_option("--beta", tp.beta, "Single beta (radians)");
  cmd_tp->add_option("--beta-steps", tp.beta_steps,
                     "Grid size over [0, pi] when --beta is absent")
      ->check(CLI::Range(1, 100000));
  cmd_tp->add_option("--m", tp.twice_m, "Restrict to one row (twice M)");
  cmd_tp->add_option("--m-prime", tp.twice_m_prime,
                     "Restrict to one column (twice M')");
  cmd_tp->add_option("--format", tp.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_tp->add_option("--out", tp.out, "Output path (default: stdout)");
  cmd_tp->add_flag("--degrees", tp.degrees, "Angles given in degrees");

  EquivOpts eq;
  CLI::App* cmd_eq = app.add_subcommand(
      "equiv",
      "Verify the embedding: spin-S probabilities vs projections in the "
      "2S-slot tensor space.  CSV columns: "
      "twice_s,twice_m,twice_m_prime,alpha,beta,lhs,rhs,delta,pass");
  cmd_eq->add_option("--spin-twice", eq.twice_s, "2S")->check(CLI::Range(1, 20));
  cmd_eq->add_option("--spin-twice-max", eq.twice_s_max,
                     "Sweep every 2S from 1 to this value");
  cmd_eq->add_option("--samples", eq.samples, "Random angle pairs per spin")
      ->check(CLI::Range(1, 100000));
  cmd_eq->add_option("--seed", eq.seed, "Seed for the angle samples");
  cmd_eq->add_option("--tol", eq.tol, "Pass tolerance on |lhs - rhs|");
  cmd_eq->add_option("--format", eq.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_eq->add_option("--out", eq.out, "Output path (default: stdout)");

  SimulateOpts sim;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate",
      "Monte Carlo measurement cascade (quantum collapse or classical "
      "hidden-variable mechanism).  CSV columns: "
      "twice_m_prime,count,frequency,exact");
  cmd_sim->add_option("--mode", sim.mode, "quantum or classical")->required()
      ->check(CLI::IsMember({"quantum", "classical"}));
  cmd_sim->add_option("--spin-twice", sim.twice_s, "2S (coherent input)")
      ->check(CLI::Range(1, 20));
  cmd_sim->add_option("--m", sim.twice_m, "Twice M of the coherent input");
  cmd_sim->add_option("--state", sim.state_path,
                      "State JSON file (general input)");
  cmd_sim->add_option("--alpha", sim.alpha, "Measurement alpha (radians)");
  cmd_sim->add_option("--beta", sim.beta, "Measurement beta (radians)");
  cmd_sim->add_option("--trials", sim.trials, "Number of trials")
      ->check(CLI::Range(1L, 1000000000L));
  cmd_sim->add_option("--seed", sim.seed, "Simulation seed");
  cmd_sim->add_option("--format", sim.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_sim->add_option("--out", sim.out, "Output path (default: stdout)");
  cmd_sim->add_flag("--degrees", sim.degrees, "Angles given in degrees");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  try {
    if (cmd_dec->parsed()) return run_decompose(dec);
    if (cmd_rec->parsed()) return run_reconstruct(rec);
    if (cmd_tp->parsed()) return run_transprob(tp);
    if (cmd_eq->parsed()) return run_equiv(eq);
    if (cmd_sim->parsed()) return run_simulate(sim);
  } catch (const capacity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
