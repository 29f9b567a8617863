// tourprof: command-line front end for the tourprof library.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tourprof/bounds.hpp"
#include "tourprof/certificate.hpp"
#include "tourprof/errors.hpp"
#include "tourprof/flags.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/incremental.hpp"
#include "tourprof/profiles.hpp"
#include "tourprof/search.hpp"
#include "tourprof/trn_io.hpp"

namespace {

using namespace tourprof;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInvariant = 4;

constexpr std::size_t kExactProfileLimit = 2000;

struct Invocation {
  std::string command_line;
  std::uint64_t seed = 0;
};

void print_banner(std::ostream& out, const Invocation& inv) {
  out << "# tourprof " << TOURPROF_VERSION << ' ' << inv.command_line << '\n';
  out << "# seed " << inv.seed << '\n';
}

// Output stream that is stdout unless a path was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DomainError("bad number '" + item + "' in list");
    }
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

// The host of a blow-up: T<m>, C<m> or a TRN file.
Tournament parse_host(const std::string& host) {
  if (host.size() >= 2 && (host[0] == 'T' || host[0] == 'C') &&
      host.find_first_not_of("0123456789", 1) == std::string::npos) {
    const auto m = static_cast<std::size_t>(std::stoul(host.substr(1)));
    return host[0] == 'T' ? transitive(m) : cyclic(m);
  }
  return load_trn(host);
}

// Parameters shared by every command that can build a tournament in memory.
struct Construction {
  std::string name;
  std::size_t n = 0;
  std::size_t s = 0;
  std::string host;
  std::string weights;
  double p = -1.0;
  std::string base;
  std::string first;
  std::string second;

  void add_options(CLI::App* cmd, std::uint64_t* seed) {
    cmd->add_option("--n", n, "Number of vertices");
    cmd->add_option("--s", s, "Interval width (interval)");
    cmd->add_option("--seed", *seed, "Random seed");
    cmd->add_option("--host", host, "Blow-up host: T<m>, C<m> or a TRN file");
    cmd->add_option("--weights", weights, "Comma-separated blow-up weights");
    cmd->add_option("--p", p, "Flip probability (flip) or cross-edge probability (mix)");
    cmd->add_option("--base", base, "Input TRN file for flip (default: cyclic(n))");
    cmd->add_option("--first", first, "First TRN file for mix");
    cmd->add_option("--second", second, "Second TRN file for mix");
  }

  std::size_t require_n() const {
    if (n == 0) throw DomainError(name + " needs --n");
    return n;
  }

  Tournament build(std::uint64_t seed) const {
    if (name == "transitive") return transitive(require_n());
    if (name == "cyclic") return cyclic(require_n());
    if (name == "interval") {
      if (s == 0) throw DomainError("interval needs --s");
      return interval(require_n(), s);
    }
    if (name == "random") return random_tournament(require_n(), seed);
    if (name == "blowup") {
      if (host.empty()) throw DomainError("blowup needs --host");
      Tournament h = parse_host(host);
      WeightVector w = weights.empty() ? WeightVector::balanced(h.order())
                                       : WeightVector(parse_list(weights));
      return blowup(BlowupSpec(std::move(h), std::move(w)), require_n(), seed);
    }
    if (name == "flip") {
      if (p < 0.0) throw DomainError("flip needs --p");
      const Tournament start = base.empty() ? cyclic(require_n()) : load_trn(base);
      return flip_perturb(start, p, seed);
    }
    if (name == "mix") {
      if (first.empty() || second.empty()) throw DomainError("mix needs --first and --second");
      if (p < 0.0) throw DomainError("mix needs --p");
      return mix(load_trn(first), load_trn(second), p, seed);
    }
    throw DomainError("unknown construction '" + name + "'");
  }
};

// Either --in FILE or --construction NAME with construction parameters.
struct Source {
  std::string in;
  Construction construction;

  void add_options(CLI::App* cmd, std::uint64_t* seed) {
    cmd->add_option("--in", in, "Input TRN file");
    cmd->add_option("--construction", construction.name,
                    "Build in memory: transitive|cyclic|interval|random|blowup|flip|mix");
    construction.add_options(cmd, seed);
  }

  Tournament load(std::uint64_t seed) const {
    if (!in.empty() && !construction.name.empty())
      throw DomainError("give either --in or --construction, not both");
    if (!in.empty()) return load_trn(in);
    if (construction.name.empty()) throw DomainError("an input is required: --in or --construction");
    return construction.build(seed);
  }
};

void print_profile(std::ostream& out, const Tournament& t, std::size_t samples,
                   std::uint64_t seed, bool counts) {
  const std::size_t n = t.order();
  if (n < 4) throw DomainError("profile needs at least 4 vertices");
  const Profile3Counts p3 = profile3(t);
  out << std::setprecision(12);
  if (samples > 0 && n > kExactProfileLimit) {
    const SampledProfile4 s = sample_profile4(t, samples, seed);
    out << "n,t3,c3,t4,c4,w,l,se_t4,se_c4,se_w,se_l,samples\n";
    out << n << ',' << p3.t3_density() << ',' << p3.c3_density();
    for (double e : s.estimate) out << ',' << e;
    for (double e : s.std_error) out << ',' << e;
    out << ',' << samples << '\n';
    if (counts) out << "n,t3_count,c3_count\n" << n << ',' << p3.t3 << ',' << p3.c3 << '\n';
    return;
  }
  if (samples > 0) std::cerr << "note: n <= " << kExactProfileLimit << ", using exact counts\n";
  const Profile4Counts p4 = profile4(t);
  out << "n,t3,c3,t4,c4,w,l\n";
  out << n << ',' << p3.t3_density() << ',' << p3.c3_density() << ','
      << p4.density(FourType::T4) << ',' << p4.density(FourType::C4) << ','
      << p4.density(FourType::W) << ',' << p4.density(FourType::L) << '\n';
  if (counts)
    out << "n,t3_count,c3_count,t4_count,c4_count,w_count,l_count\n"
        << n << ',' << p3.t3 << ',' << p3.c3 << ',' << p4.t4 << ',' << p4.c4 << ',' << p4.w
        << ',' << p4.l << '\n';
}

const char* abscissa_name(Figure fig) {
  switch (fig) {
    case Figure::kT3T4: return "t3";
    case Figure::kT4C4: return "t4";
    default: return "c3";
  }
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tournament subtournament profiles, bounds, flag certificates and search"};
  app.set_version_flag("--version", std::string(TOURPROF_VERSION));
  app.require_subcommand(1);

  Invocation inv;
  inv.command_line = join_args(argc, argv);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a construction as a TRN file");
  Construction gen_args;
  std::string gen_out;
  gen->add_option("construction", gen_args.name,
                  "transitive|cyclic|interval|random|blowup|flip|mix")
      ->required()
      ->check(CLI::IsMember({"transitive", "cyclic", "interval", "random", "blowup", "flip", "mix"}));
  gen_args.add_options(gen, &inv.seed);
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // profile
  auto* profile = app.add_subcommand("profile", "Exact (or sampled) 3- and 4-profile as CSV");
  Source profile_src;
  std::size_t profile_samples = 0;
  bool profile_counts = false;
  profile_src.add_options(profile, &inv.seed);
  profile->add_option("--sample", profile_samples, "Sample this many 4-sets (only for n > 2000)");
  profile->add_flag("--counts", profile_counts, "Also print integer counts");

  // edge-stats
  auto* edges = app.add_subcommand("edge-stats", "Per-arc counts, moments or the tail of X");
  Source edge_src;
  std::size_t phi_points = 0;
  bool edge_moments = false;
  edge_src.add_options(edges, &inv.seed);
  edges->add_option("--phi", phi_points, "Print phi(x) on this many points of [0,1]")
      ->check(CLI::Range(2, 100000));
  edges->add_flag("--moments", edge_moments, "Print moments of X, Y, Z");

  // curve
  auto* curve = app.add_subcommand("curve", "Bound curves for one of the four figures");
  int fig_number = 4;
  std::size_t grid_size = 101;
  std::optional<double> range_min, range_max;
  std::string curve_out;
  curve->add_option("--fig", fig_number, "Figure 1..4")->required()->check(CLI::Range(1, 4));
  curve->add_option("--grid", grid_size, "Number of grid points")->check(CLI::Range(2, 10000000));
  curve->add_option("--min", range_min, "Override the lower end of the abscissa");
  curve->add_option("--max", range_max, "Override the upper end of the abscissa");
  curve->add_option("--out", curve_out, "Output path (default stdout)");

  // flags
  auto* flags = app.add_subcommand("flags", "Flag-algebra utilities over the edge type");
  flags->require_subcommand(1);
  std::size_t flag_k = 3;
  std::string flag_out;
  std::string table_cache;
  double flag_gamma = 0.0;
  SearchOptions cert_search;
  Source moment_src;
  auto* f_enum = flags->add_subcommand("enumerate", "List tournament types of order k");
  f_enum->add_option("--k", flag_k, "Order (1..6)")->required()->check(CLI::Range(1, 6));
  auto* f_flags = flags->add_subcommand("flags", "List flags of order k over the edge type");
  f_flags->add_option("--k", flag_k, "Flag order (2..4)")->required()->check(CLI::Range(2, 4));
  auto* f_table = flags->add_subcommand("table", "Write the exact product table (FLAGTAB v1)");
  f_table->add_option("--k", flag_k, "Flag order (3 or 4)")->required()->check(CLI::IsMember({3, 4}));
  f_table->add_option("--cache", table_cache, "Reuse or create this cache file");
  f_table->add_option("--out", flag_out, "Output path (default stdout)");
  auto* f_lemma = flags->add_subcommand("lemma1", "Write the closed-form k=3 certificate, c4 >= 18g^2/(1+8g) (FLAGCERT v1)");
  f_lemma->add_option("--gamma", flag_gamma, "c3 value in (0, 1/4]")->required();
  f_lemma->add_option("--k", flag_k, "Flag order (3, or 4 for the lifted form)")
      ->check(CLI::IsMember({3, 4}));
  f_lemma->add_option("--out", flag_out, "Output path (default stdout)");
  auto* f_search = flags->add_subcommand("search", "Search a certificate (FLAGCERT v1)");
  f_search->add_option("--gamma", flag_gamma, "c3 value in (0, 1/4]")->required();
  f_search->add_option("--k", flag_k, "Flag order (3 or 4)")->check(CLI::IsMember({3, 4}));
  f_search->add_option("--iterations", cert_search.iterations, "Ascent iterations");
  f_search->add_option("--seed", inv.seed, "Random seed");
  f_search->add_option("--out", flag_out, "Output path (default stdout)");
  auto* f_moments = flags->add_subcommand("moments", "Exact flag moment consistency check");
  moment_src.add_options(f_moments, &inv.seed);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a certificate or a tournament's identities");
  std::string verify_cert;
  Source verify_src;
  verify->add_option("--cert", verify_cert, "FLAGCERT v1 file");
  verify_src.add_options(verify, &inv.seed);

  // search
  auto* search = app.add_subcommand("search", "Simulated annealing for small c4 at given c3");
  std::vector<double> search_gammas;
  bool search_default_grid = false;
  std::size_t search_n = 64;
  std::size_t search_seeds = 1;
  AnnealOptions anneal_options;
  std::string search_out;
  search->add_option("--gamma", search_gammas, "Target c3 value(s)")->delimiter(',');
  search->add_flag("--default-grid", search_default_grid, "Add the built-in c3 grid (used when no --gamma is given)");
  search->add_option("--n", search_n, "Number of vertices")->check(CLI::Range(8, 100000));
  search->add_option("--seed", inv.seed, "Base seed");
  search->add_option("--seeds", search_seeds, "Runs per grid point")->check(CLI::Range(1, 100000));
  search->add_option("--penalty", anneal_options.penalty, "Weight of (c3 - gamma)^2");
  search->add_option("--moves", anneal_options.schedule.moves, "Proposals per run (0: 200 C(n,2))");
  search->add_option("--out", search_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const Tournament t = gen_args.build(inv.seed);
      Output out(gen_out);
      print_banner(out.to_stdout() ? std::cerr : std::cout, inv);
      write_trn(out.stream(), t);
    } else if (*profile) {
      const Tournament t = profile_src.load(inv.seed);
      print_banner(std::cout, inv);
      print_profile(std::cout, t, profile_samples, inv.seed, profile_counts);
    } else if (*edges) {
      const Tournament t = edge_src.load(inv.seed);
      print_banner(std::cout, inv);
      std::cout << std::setprecision(12);
      if (phi_points > 0) {
        const auto grid = linspace(0.0, 1.0, phi_points);
        const auto phi = x_cdf(t, grid);
        std::cout << "x,phi\n";
        for (std::size_t i = 0; i < grid.size(); ++i) std::cout << grid[i] << ',' << phi[i] << '\n';
      } else if (edge_moments) {
        const MomentReport r = moments(t);
        std::cout << "n,ex,ey,exx,exy,eyy,ezz,var_x\n";
        const auto& v = r.value;
        std::cout << r.n << ',' << v.ex << ',' << v.ey << ',' << v.exx << ',' << v.exy << ','
                  << v.eyy << ',' << v.ezz << ',' << v.var_x << '\n';
        if (r.exact) {
          const auto& x = *r.exact;
          std::cout << "# exact " << to_string(x.ex) << ' ' << to_string(x.ey) << ' '
                    << to_string(x.exx) << ' ' << to_string(x.exy) << ' ' << to_string(x.eyy)
                    << ' ' << to_string(x.ezz) << ' ' << to_string(x.var_x) << '\n';
        }
      } else {
        std::cout << "tail,head,cyc,thru,dom_out,dom_in\n";
        for (const EdgeRecord& e : edge_stats(t).edges)
          std::cout << e.tail << ',' << e.head << ',' << e.cyc << ',' << e.thru << ','
                    << e.dom_out << ',' << e.dom_in << '\n';
      }
    } else if (*curve) {
      const auto fig = static_cast<Figure>(fig_number);
      auto [lo, hi] = figure_range(fig);
      if (range_min) lo = *range_min;
      if (range_max) hi = *range_max;
      if (!(lo < hi)) throw DomainError("--min must be below --max");
      const auto grid = linspace(lo, hi, grid_size);
      const auto rows = curve_dataset(grid, fig);
      Output out(curve_out);
      std::ostream& os = out.stream();
      print_banner(os, inv);
      os << std::setprecision(12);
      const bool own_axis = fig == Figure::kT3T4 || fig == Figure::kT4C4;
      os << abscissa_name(fig) << (own_axis ? ",c3" : "") << ",upper,lb_variance,lb_flag,conjectured,m\n";
      for (const CurveRow& r : rows) {
        os << r.abscissa;
        if (own_axis) os << ',' << r.c3;
        os << ',' << r.upper << ',' << r.lb_variance << ',' << r.lb_flag << ','
           << r.conjectured << ',' << r.m << '\n';
      }
    } else if (*flags) {
      if (*f_enum) {
        print_banner(std::cout, inv);
        std::cout << "# code,c3,c4\n";
        for (const TournamentType& t : enumerate_types(flag_k))
          std::cout << t.code.to_string() << ',' << to_string(t.c3_density()) << ','
                    << to_string(t.c4_density()) << '\n';
      } else if (*f_flags) {
        print_banner(std::cout, inv);
        std::cout << "# index,code,tag\n";
        const auto list = enumerate_flags(flag_k);
        for (std::size_t i = 0; i < list.size(); ++i) {
          const char* tag = list[i].tag == Flag::Tag::kX ? "X" : list[i].tag == Flag::Tag::kY ? "Y" : "-";
          std::cout << i << ',' << list[i].code.to_string() << ',' << tag << '\n';
        }
      } else if (*f_table) {
        const ProductTable table =
            table_cache.empty() ? product_table(flag_k) : product_table_cached(flag_k, table_cache);
        Output out(flag_out);
        print_banner(out.to_stdout() ? std::cerr : std::cout, inv);
        write_product_table(out.stream(), table);
      } else if (*f_lemma || *f_search) {
        Certificate cert;
        if (*f_lemma) {
          cert = lemma1_certificate(flag_gamma);
          if (flag_k == 4) cert = lift_certificate(cert);
        } else {
          cert_search.seed = inv.seed;
          cert = search_certificate(flag_gamma, flag_k, cert_search);
        }
        const CertificateCheck check = verify_certificate(cert);
        if (!check.valid) throw InvariantViolation("produced certificate does not verify");
        Output out(flag_out);
        print_banner(out.to_stdout() ? std::cerr : std::cout, inv);
        write_certificate(out.stream(), cert);
        (out.to_stdout() ? std::cerr : std::cout)
            << "# lambda " << std::setprecision(12) << cert.lambda << '\n';
      } else if (*f_moments) {
        const Tournament t = moment_src.load(inv.seed);
        const MomentConsistencyReport r = moment_consistency_check(t);
        print_banner(std::cout, inv);
        const ProductTable& table = shared_product_table(3);
        std::cout << "i,j,lhs,rhs,ok\n";
        for (const auto& e : r.entries)
          std::cout << table.flags[e.i].code.to_string() << ',' << table.flags[e.j].code.to_string()
                    << ',' << e.lhs << ',' << to_string(e.rhs) << ',' << (e.ok ? "true" : "false")
                    << '\n';
        if (!r.ok()) throw InvariantViolation("flag moment identities fail");
      }
    } else if (*verify) {
      if (!verify_cert.empty()) {
        const Certificate cert = load_certificate(verify_cert);
        const CertificateCheck check = verify_certificate(cert);
        print_banner(std::cout, inv);
        std::cout << std::setprecision(12) << (check.valid ? "valid" : "invalid")
                  << " lambda=" << cert.lambda << " gamma=" << cert.gamma
                  << " min_slack=" << check.min_slack << " min_eigenvalue=" << check.min_eigenvalue
                  << '\n';
        return check.valid ? 0 : kExitData;
      }
      const Tournament t = verify_src.load(inv.seed);
      const IdentityReport r = verify_identities(t);
      print_banner(std::cout, inv);
      for (const auto& name : r.checked) std::cout << "ok " << name << '\n';
      for (const auto& name : r.violations) std::cout << "VIOLATED " << name << '\n';
      if (!r.ok()) return kExitInvariant;
    } else if (*search) {
      std::vector<double> grid = search_gammas;
      if (search_default_grid || grid.empty()) {
        const auto d = default_scan_grid();
        grid.insert(grid.end(), d.begin(), d.end());
      }
      const auto rows = boundary_scan(grid, search_n, search_seeds, inv.seed, anneal_options);
      Output out(search_out);
      print_banner(out.stream(), inv);
      write_scan_csv(out.stream(), rows);
      for (const ScanRow& r : rows)
        if (r.discovery)
          std::cerr << "DISCOVERY: gamma=" << r.gamma << " c3=" << r.c3 << " c4=" << r.c4
                    << " lies below the conjectured curve by more than " << kDiscoveryMargin
                    << "; review manually\n";
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
