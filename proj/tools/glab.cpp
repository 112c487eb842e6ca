// glab: command-line front end for the prime, Mertens, extremal and Gronwall
// computations. Exit status: 0 ok, 1 usage, 2 domain/resource, 3 invariant or
// numeric contract, 4 Ramanujan–Robin violator above 5040.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/extremal.hpp"
#include "glab/gronwall.hpp"
#include "glab/io.hpp"
#include "glab/mertens.hpp"
#include "glab/primes.hpp"

namespace {

using glab::io::json;

constexpr const char* kVersion = "0.1.0";

constexpr const char* kAbout = R"(
quantity                                        command
theta(x) = sum_{p<=x} log p                     mertens scan, mertens theta
S(x) = sum_{p<=x} log(p/(p-1))                  mertens scan
R(x) = S(x) - log log x - gamma                 mertens scan
Q(x) = S(x) - log log theta(x) - gamma          mertens scan (scaledQ = Q sqrt(p) log p)
|theta(x) - x| log x / x, 8 pi / (sqrt x log^2 x) scalings   mertens theta
Y(x,l) = sum_{p>x} p^-l vs 1/((l-1) x^(l-1) log x)           mertens tail
J(x,l) = int_x^inf dt / (t^l log t) = E1((l-1) log x)         mertens tail
B1 = gamma + sum_p (log(1 - 1/p) + 1/p)         mertens b1
sum 1/p - log log theta - B1                    mertens criteria
N_k*, eta = E + F, log G = S - U - V            extremal
sigma(N), G(N) = sigma(N) / (N log log N)       gronwall sigma, gronwall g
G(N) >= e^gamma for N <= limit                  gronwall rri
max log G with gpf = p_k, a_k                   gronwall maxg
)";

enum class Format { csv, json };

struct Output {
  Format format = Format::csv;
  std::ostream* out = &std::cout;
  std::unique_ptr<std::ofstream> file;

  void header(const std::vector<std::string>& h) const { glab::io::csv_line(*out, h); }
  void row(const std::vector<std::string>& r) const { glab::io::csv_line(*out, r); }
  void doc(const json& j) const { *out << j.dump(2) << '\n'; }
};

// "# key=value" lines on stderr carry scan summaries in CSV mode.
void note(const json& summary) {
  for (const auto& [key, value] : summary.items()) {
    std::cerr << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

// Keeps every stride-th row, the last prime below each power of ten and the
// final row. One row of look-ahead decides the decade rule.
template <class Row>
class Downsampler {
 public:
  Downsampler(std::uint64_t stride, std::function<void(const Row&)> emit)
      : stride_(stride), emit_(std::move(emit)) {}

  void push(std::uint64_t ordinal, std::uint64_t p, const Row& row) {
    if (pending_) {
      const bool crosses = next_power_above(pending_p_) <= p;
      if ((pending_ordinal_ - 1) % stride_ == 0 || crosses) emit_(*pending_);
    }
    pending_ = row;
    pending_p_ = p;
    pending_ordinal_ = ordinal;
  }
  void finish() {
    if (pending_) emit_(*pending_);
    pending_.reset();
  }

 private:
  static std::uint64_t next_power_above(std::uint64_t p) {
    std::uint64_t t = 10;
    while (t <= p) t *= 10;
    return t;
  }
  std::uint64_t stride_;
  std::function<void(const Row&)> emit_;
  std::optional<Row> pending_;
  std::uint64_t pending_p_ = 0;
  std::uint64_t pending_ordinal_ = 0;
};

std::uint64_t auto_stride(std::uint64_t stride, std::uint64_t limit) {
  if (stride > 0) return stride;
  return limit > 10'000'000 ? 100 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Prime sums, Mertens remainders, extremal numbers and Gronwall numbers", "glab"};
  app.fallthrough();

  unsigned threads = 1;
  std::string format_opt;
  std::string out_path;
  bool about = false;
  app.add_option("--threads", threads, "worker threads (>= 1)")
      ->check(CLI::PositiveNumber)
      ->envname("GLAB_THREADS");
  auto* fmt = app.add_option("--format", format_opt, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* fcsv = app.add_flag("--csv", "same as --format csv");
  auto* fjson = app.add_flag("--json", "same as --format json");
  fmt->excludes(fcsv)->excludes(fjson);
  fcsv->excludes(fjson);
  app.add_option("--out", out_path, "write to PATH instead of stdout")->envname("GLAB_OUT");
  app.add_flag("--about", about, "version and formula map");

  // primes
  auto* primes = app.add_subcommand("primes", "list primes (index,prime)");
  std::optional<std::uint64_t> primes_limit;
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  primes->add_option("--limit", primes_limit, "largest value sieved");
  primes->add_option("--segment-size", segment_size, "numbers per sieve segment")->check(CLI::PositiveNumber);
  auto* gaps = primes->add_subcommand("gaps", "consecutive prime gaps (p,gap,normalized)");
  std::uint64_t gaps_limit = 0;
  gaps->add_option("--limit", gaps_limit)->required();

  // mertens
  auto* mertens = app.add_subcommand("mertens", "Mertens sums and remainders");
  mertens->require_subcommand(1);
  auto* m_scan = mertens->add_subcommand("scan", "k,p,theta,S,R,Q,scaledQ per prime");
  std::uint64_t scan_limit = 0, scan_stride = 0, window_from = 1000;
  m_scan->add_option("--limit", scan_limit)->required();
  m_scan->add_option("--stride", scan_stride, "keep every s-th prime (default 1, or 100 above 10^7)");
  m_scan->add_option("--window-from", window_from, "sup/inf of scaledQ taken over p >= this");
  auto* m_theta = mertens->add_subcommand("theta", "theta(x) - x and its two scalings");
  std::uint64_t theta_limit = 0, theta_stride = 0;
  m_theta->add_option("--limit", theta_limit)->required();
  m_theta->add_option("--stride", theta_stride);
  auto* m_tail = mertens->add_subcommand("tail", "prime power tail Y(x, lambda) and J(x, lambda)");
  double tail_x = 0.0, tail_lambda = 0.0;
  m_tail->add_option("--x", tail_x)->required();
  m_tail->add_option("--lambda", tail_lambda)->required();
  auto* m_b1 = mertens->add_subcommand("b1", "Meissel–Mertens constant");
  double b1_tol = 1e-20;
  std::uint64_t b1_head = 1000;
  m_b1->add_option("--tol", b1_tol);
  m_b1->add_option("--head-limit", b1_head);
  auto* m_crit = mertens->add_subcommand("criteria", "reciprocal prime sums against log log theta + B1");
  std::uint64_t crit_limit = 0, crit_stride = 0;
  m_crit->add_option("--limit", crit_limit)->required();
  m_crit->add_option("--stride", crit_stride);

  // extremal
  auto* extremal = app.add_subcommand("extremal", "extremal numbers N_k* and their certificates");
  std::optional<std::uint64_t> ext_k;
  bool bigint_verify = false;
  extremal->add_option("--k", ext_k);
  extremal->add_flag("--bigint-verify", bigint_verify, "cross-check with exact integers");
  auto* e_scan = extremal->add_subcommand("scan", "certificate summary per k");
  std::uint64_t e_from = 0, e_to = 0, e_stride = 1;
  e_scan->add_option("--from", e_from)->required();
  e_scan->add_option("--to", e_to)->required();
  e_scan->add_option("--stride", e_stride)->check(CLI::PositiveNumber);

  // gronwall
  auto* gronwall = app.add_subcommand("gronwall", "divisor sums and Gronwall numbers");
  gronwall->require_subcommand(1);
  auto* g_sigma = gronwall->add_subcommand("sigma", "sigma(N)");
  std::uint64_t sigma_n = 0;
  g_sigma->add_option("N", sigma_n)->required();
  auto* g_g = gronwall->add_subcommand("g", "G(N) and its margin to e^gamma");
  std::uint64_t g_n = 0;
  g_g->add_option("N", g_n)->required();
  auto* g_rri = gronwall->add_subcommand("rri", "all N <= limit with G(N) >= e^gamma");
  std::uint64_t rri_limit = 0;
  g_rri->add_option("--limit", rri_limit)->required();
  auto* g_maxg = gronwall->add_subcommand("maxg", "hill-climb for max G with gpf = p_k");
  std::uint64_t maxg_k = 0, maxg_budget = 100000;
  g_maxg->add_option("--k", maxg_k)->required();
  g_maxg->add_option("--budget", maxg_budget, "candidate evaluations");

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (about) {
    std::cout << "glab " << kVersion << '\n' << kAbout;
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  Output output;
  if (fjson->count() > 0) {
    output.format = Format::json;
  } else if (fcsv->count() > 0) {
    output.format = Format::csv;
  } else if (!format_opt.empty()) {
    output.format = format_opt == "json" ? Format::json : Format::csv;
  } else if (const char* env = std::getenv("GLAB_FORMAT")) {
    const std::string v = env;
    if (v != "csv" && v != "json") {
      std::cerr << "GLAB_FORMAT must be csv or json\n";
      return 1;
    }
    output.format = v == "json" ? Format::json : Format::csv;
  }
  const bool as_json = output.format == Format::json;

  glab::SieveConfig sieve;
  sieve.threads = threads;
  sieve.segment_size = segment_size;

  try {
    if (!out_path.empty()) {
      output.file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
      if (!*output.file) throw glab::ResourceError("cannot open output path " + out_path);
      output.out = output.file.get();
    }
    int status = 0;

    if (primes->parsed()) {
      if (gaps->parsed()) {
        json rows = json::array();
        if (!as_json) output.header(glab::io::kGapHeader);
        const auto report = glab::gap_scan(gaps_limit, [&](const glab::GapSample& s) {
          if (as_json) {
            rows.push_back(glab::io::to_json(s));
          } else {
            output.row(glab::io::gap_row(s));
          }
        }, sieve);
        if (as_json) {
          output.doc({{"gaps", rows}, {"summary", glab::io::to_json(report)}});
        } else {
          note(glab::io::to_json(report));
        }
      } else {
        if (!primes_limit) throw CLI::RequiredError("--limit");
        json rows = json::array();
        if (!as_json) output.header(glab::io::kPrimeHeader);
        std::uint64_t index = 0;
        if (*primes_limit >= 2) {
          glab::for_each_segment(0, *primes_limit + 1, sieve, [&](std::span<const std::uint64_t> ps) {
            for (const std::uint64_t p : ps) {
              ++index;
              if (as_json) {
                rows.push_back({{"index", index}, {"prime", p}});
              } else {
                *output.out << index << ',' << p << '\n';
              }
            }
          });
        }
        if (as_json) output.doc({{"primes", rows}, {"count", index}});
      }
    } else if (mertens->parsed()) {
      if (m_scan->parsed()) {
        json rows = json::array();
        if (!as_json) output.header(glab::io::kRemainderHeader);
        Downsampler<glab::mertens::RemainderSample> ds(auto_stride(scan_stride, scan_limit),
                                                       [&](const glab::mertens::RemainderSample& s) {
                                                         if (as_json) {
                                                           rows.push_back(glab::io::to_json(s));
                                                         } else {
                                                           output.row(glab::io::remainder_row(s));
                                                         }
                                                       });
        const auto summary = glab::mertens::scan(
            scan_limit, [&](const glab::mertens::RemainderSample& s) { ds.push(s.k, s.p, s); }, sieve,
            window_from);
        ds.finish();
        if (as_json) {
          output.doc({{"samples", rows}, {"summary", glab::io::to_json(summary)}});
        } else {
          note(glab::io::to_json(summary));
        }
      } else if (m_theta->parsed()) {
        json rows = json::array();
        if (!as_json) output.header(glab::io::kThetaHeader);
        std::uint64_t ordinal = 0;
        Downsampler<glab::mertens::ThetaSample> ds(auto_stride(theta_stride, theta_limit),
                                                   [&](const glab::mertens::ThetaSample& s) {
                                                     if (as_json) {
                                                       rows.push_back(glab::io::to_json(s));
                                                     } else {
                                                       output.row(glab::io::theta_row(s));
                                                     }
                                                   });
        const auto summary = glab::mertens::theta_deviation(
            theta_limit, [&](const glab::mertens::ThetaSample& s) { ds.push(++ordinal, s.x, s); }, sieve);
        ds.finish();
        if (as_json) {
          output.doc({{"samples", rows}, {"summary", glab::io::to_json(summary)}});
        } else {
          note(glab::io::to_json(summary));
        }
      } else if (m_tail->parsed()) {
        const auto t = glab::mertens::prime_zeta_tail(tail_x, tail_lambda);
        const auto J = glab::mertens::log_integral_J(tail_x, tail_lambda);
        if (as_json) {
          output.doc(glab::io::to_json(t, J));
        } else {
          output.header(glab::io::kTailHeader);
          output.row(glab::io::tail_row(t, J));
        }
      } else if (m_b1->parsed()) {
        const auto b = glab::mertens::meissel_mertens_B1(b1_tol, b1_head);
        if (as_json) {
          output.doc(glab::io::to_json(b));
        } else {
          output.header(glab::io::kB1Header);
          output.row(glab::io::b1_row(b));
        }
      } else if (m_crit->parsed()) {
        json rows = json::array();
        if (!as_json) output.header(glab::io::kCriterionHeader);
        Downsampler<glab::mertens::CriterionRow> ds(auto_stride(crit_stride, crit_limit),
                                                    [&](const glab::mertens::CriterionRow& r) {
                                                      if (as_json) {
                                                        rows.push_back(glab::io::to_json(r));
                                                      } else {
                                                        output.row(glab::io::criterion_row(r));
                                                      }
                                                    });
        const auto summary = glab::mertens::criterion_scan(
            crit_limit, [&](const glab::mertens::CriterionRow& r) { ds.push(r.k, r.p, r); }, sieve);
        ds.finish();
        if (as_json) {
          output.doc({{"rows", rows}, {"summary", glab::io::to_json(summary)}});
        } else {
          note(glab::io::to_json(summary));
        }
      }
    } else if (extremal->parsed()) {
      if (e_scan->parsed()) {
        const glab::extremal::LemmaContext ctx(e_to, sieve);
        json rows = json::array();
        if (!as_json) output.header(glab::io::kCertificateHeader);
        const auto summary = glab::extremal::scan_lemma(
            e_from, e_to, e_stride,
            [&](const glab::extremal::ExtremalCertificate& c) {
              if (as_json) {
                rows.push_back(glab::io::to_json(c));
              } else {
                output.row(glab::io::certificate_row(c));
              }
            },
            ctx, threads);
        if (as_json) {
          output.doc({{"certificates", rows}, {"summary", glab::io::to_json(summary)}});
        } else {
          note(glab::io::to_json(summary));
        }
        if (summary.failed > 0) status = 3;
      } else {
        if (!ext_k) throw CLI::RequiredError("--k");
        const std::uint64_t kmin = glab::extremal::k_min();
        if (*ext_k < kmin) {
          throw glab::UnsupportedRegime("extremal construction needs k >= " + std::to_string(kmin), kmin);
        }
        const glab::extremal::LemmaContext ctx(*ext_k, sieve);
        const auto cert = glab::extremal::construct(*ext_k, ctx);
        std::optional<glab::extremal::BigintReport> check;
        if (bigint_verify) check = glab::extremal::bigint_verify(*ext_k, ctx);
        if (as_json) {
          json doc = glab::io::to_json(cert);
          if (check) doc["bigint_verify"] = glab::io::to_json(*check);
          output.doc(doc);
        } else {
          auto header = glab::io::kCertificateHeader;
          auto row = glab::io::certificate_row(cert);
          if (check) {
            header.insert(header.end(), {"bigintDiff", "bigintPassed"});
            row.insert(row.end(), {glab::io::num(check->log_G_diff), check->passed() ? "1" : "0"});
          }
          output.header(header);
          output.row(row);
        }
        if (!cert.checks.all() || (check && !check->passed())) status = 3;
      }
    } else if (gronwall->parsed()) {
      if (g_sigma->parsed()) {
        if (sigma_n < 1) throw glab::DomainError("sigma needs N >= 1");
        const auto s = glab::gronwall::sigma(sigma_n);
        if (as_json) {
          output.doc({{"N", sigma_n}, {"sigma", s.get_str()}});
        } else {
          output.header({"N", "sigma"});
          output.row({std::to_string(sigma_n), s.get_str()});
        }
      } else if (g_g->parsed()) {
        const auto rec = glab::gronwall::gronwall_G(g_n);
        if (as_json) {
          output.doc(glab::io::to_json(rec));
        } else {
          output.header({"N", "sigma", "G", "margin"});
          output.row({std::to_string(rec.N), rec.sigma.get_str(), glab::io::num(rec.G), glab::io::num(rec.margin)});
        }
      } else if (g_rri->parsed()) {
        const auto rep = glab::gronwall::rri_scan(rri_limit, threads);
        if (as_json) {
          output.doc(glab::io::to_json(rep));
        } else {
          output.header({"N", "sigma", "G", "margin"});
          for (const std::uint64_t n : rep.violators) {
            const auto rec = glab::gronwall::gronwall_G(n);
            output.row({std::to_string(n), rec.sigma.get_str(), glab::io::num(rec.G), glab::io::num(rec.margin)});
          }
          note({{"limit", rep.limit},
                {"violators", rep.violators.size()},
                {"max_violator", rep.max_violator},
                {"near_misses", rep.near_misses.size()}});
        }
        if (rep.violator_above_threshold()) {
          std::cerr << "VIOLATOR ABOVE 5040: N = " << rep.max_violator
                    << " has G(N) >= e^gamma; this contradicts the Robin criterion\n";
          status = 4;
        }
      } else if (g_maxg->parsed()) {
        const auto m = glab::gronwall::max_g(maxg_k, maxg_budget);
        if (as_json) {
          output.doc(glab::io::to_json(m));
        } else {
          output.header(glab::io::kMaxGHeader);
          output.row(glab::io::maxg_row(m));
        }
      }
    }
    output.out->flush();
    if (!*output.out) throw glab::ResourceError("write failed");
    return status;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const glab::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const glab::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 2;
  } catch (const glab::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const glab::NumericContractError& e) {
    std::cerr << "numeric contract error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
