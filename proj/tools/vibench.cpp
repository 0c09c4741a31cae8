// Benchmark CLI: trajectories, convergence studies, energy runs and the
// rigid-body method comparison.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "vi/errors.hpp"
#include "vi/experiments.hpp"

namespace {

constexpr int kExitNoConvergence = 2;
constexpr int kExitInvalidSpec = 3;

vi::Vec3 to_vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw vi::InvalidSpec(std::string(what) + " needs three comma-separated values");
  return vi::Vec3(v[0], v[1], v[2]);
}

template <class Writer>
void emit(const vi::ExperimentSpec& spec, Writer&& write) {
  if (spec.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(spec.out);
  if (!file) throw vi::InvalidSpec("cannot open '" + spec.out + "' for writing");
  write(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational integrator benchmarks"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");

  vi::ExperimentSpec spec;
  std::vector<double> omega0, inertia;
  double tol = 0.0;
  app.add_option("--system", spec.system, "pendulum, sho, free, free2, free3, pair or rigidbody")
      ->capture_default_str();
  app.add_option("--method", spec.method, "Integrator name (see the methods subcommand)")->capture_default_str();
  app.add_option("--h", spec.h, "Step size")->capture_default_str();
  app.add_option("--h-list", spec.h_list, "Comma-separated step sizes for converge")->delimiter(',');
  app.add_option("--T", spec.T, "Final time")->capture_default_str();
  app.add_option("--q0", spec.q0, "Initial positions, comma-separated")->delimiter(',');
  app.add_option("--p0", spec.p0, "Initial momenta, comma-separated")->delimiter(',');
  app.add_option("--omega0", omega0, "Rigid-body initial angular velocity")->delimiter(',');
  app.add_option("--inertia", inertia, "Rigid-body principal moments of inertia")->delimiter(',');
  auto* tol_opt = app.add_option("--tol", tol, "Newton tolerance override");
  app.add_option("--out", spec.out, "Output path (default: standard output)");
  app.add_option("--format", spec.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--seed", spec.seed, "Seed recorded with the run")->capture_default_str();
  app.add_flag("--timing", spec.timing, "Include wall-clock times in rigidbody output");

  auto* integrate = app.add_subcommand("integrate", "Integrate one trajectory")->fallthrough();
  auto* converge = app.add_subcommand("converge", "Global error over a sweep of step sizes")->fallthrough();
  auto* energy = app.add_subcommand("energy", "Energy error along a trajectory")->fallthrough();
  auto* rigidbody = app.add_subcommand("rigidbody", "Compare the rigid-body methods")->fallthrough();
  auto* methods = app.add_subcommand("methods", "List the integrators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidSpec;
  }

  try {
    if (!omega0.empty()) spec.omega0 = to_vec3(omega0, "--omega0");
    if (!inertia.empty()) spec.inertia = to_vec3(inertia, "--inertia");
    if (tol_opt->count() > 0) spec.tol = tol;

    if (*methods) {
      for (const auto& m : vi::method_registry()) {
        const char* where = m.rigid_body && m.phase ? "both" : (m.rigid_body ? "rigidbody" : "systems");
        std::cout << m.name << "\t" << where << "\t" << m.description << "\n";
      }
    } else if (*integrate) {
      const auto traj = vi::run_integrate(spec);
      emit(spec, [&](std::ostream& os) { vi::write_trajectory(os, traj, spec.format); });
    } else if (*energy) {
      const auto report = vi::run_energy(spec);
      emit(spec, [&](std::ostream& os) { vi::write_energy(os, report, spec.format); });
      std::cerr << "max |E - E0| = " << vi::format_real(report.max_energy_error)
                << ", drift slope = " << vi::format_real(report.drift_slope) << "\n";
    } else if (*converge) {
      const auto report = vi::run_convergence(spec);
      emit(spec, [&](std::ostream& os) { vi::write_convergence(os, report, spec.format); });
      std::cerr << "slope = " << vi::format_real(report.slope) << " (" << report.reference << ")\n";
    } else if (*rigidbody) {
      if (app.get_option("--h")->count() == 0) spec.h = 0.2;
      if (app.get_option("--T")->count() == 0) spec.T = 30.0;
      const auto report = vi::run_rigidbody(spec);
      emit(spec, [&](std::ostream& os) { vi::write_rigidbody(os, report, spec.format, spec.timing); });
      for (const auto& s : report.methods)
        std::cerr << s.method << ": " << vi::format_real(s.wall_time) << " s\n";
    }
  } catch (const vi::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const vi::SingularJacobian& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const vi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidSpec;
  }
  return 0;
}
