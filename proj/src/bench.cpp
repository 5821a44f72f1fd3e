#include "latred/bench.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "latred/bkz.hpp"
#include "latred/deep_lll.hpp"
#include "latred/latgen.hpp"
#include "latred/lll.hpp"
#include "latred/pot_lll.hpp"

#include "json.hpp"

namespace latred {

std::string AlgoSpec::label() const {
  switch (algo) {
    case Algo::Lll: return "lll";
    case Algo::PotLll: return "potlll";
    case Algo::PotLll2: return "potlll2";
    case Algo::DeepLll: return "deeplll:" + std::to_string(beta);
    case Algo::Bkz: return "bkz:" + std::to_string(beta);
  }
  return "?";
}

std::optional<AlgoSpec> AlgoSpec::parse(const std::string& text) {
  std::string name = text;
  int beta = 0;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    name = text.substr(0, pos);
    try {
      beta = std::stoi(text.substr(pos + 1));
    } catch (...) {
      return std::nullopt;
    }
  }
  if (name == "lll" && beta == 0) return AlgoSpec{Algo::Lll, 0};
  if (name == "potlll" && beta == 0) return AlgoSpec{Algo::PotLll, 0};
  if (name == "potlll2" && beta == 0) return AlgoSpec{Algo::PotLll2, 0};
  if (name == "deeplll" && beta >= 2) return AlgoSpec{Algo::DeepLll, beta};
  if (name == "bkz" && beta >= 2) return AlgoSpec{Algo::Bkz, beta};
  return std::nullopt;
}

double worst_case_bound(int n, double delta) {
  if (n < 2) return 1.0;
  double log_bound = -(static_cast<double>(n - 1) / 4.0) *
                     std::log(delta - 0.25) / static_cast<double>(n);
  return std::exp(log_bound);
}

FloatKind pick_float_kind(const Basis& b, std::optional<FloatKind> forced) {
  if (forced) return *forced;
  std::size_t max_bits = 1;
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      if (sgn(b(i, j)) != 0)
        max_bits = std::max(max_bits,
                            mpz_sizeinbase(b(i, j).get_mpz_t(), 2));
  // Large entries put the Gram-Schmidt cancellations beyond a double
  // mantissa well before they overflow its exponent; extended precision is
  // the regime all sizeable instances run in.
  return max_bits > 96 ? FloatKind::ExtendedOrEmulated
                       : FloatKind::HardwareDouble;
}

namespace {

ReductionParams params_for(const AlgoSpec& algo, const ReductionParams& base) {
  ReductionParams p = base;
  if (algo.algo == Algo::DeepLll || algo.algo == Algo::Bkz) p.beta = algo.beta;
  if (algo.algo == Algo::PotLll2)
    p.insertion_strategy = InsertionStrategy::FirstBelowDelta;
  if (algo.algo == Algo::PotLll)
    p.insertion_strategy = InsertionStrategy::MinPotential;
  return p;
}

template <class FT>
ReductionStats run_with(Basis& b, const AlgoSpec& algo,
                        const ReductionParams& p, FloatConfig cfg) {
  switch (algo.algo) {
    case Algo::Lll: return lll_reduce<Int, FT>(b, p, cfg);
    case Algo::PotLll:
    case Algo::PotLll2: return pot_lll_reduce<Int, FT>(b, p, cfg);
    case Algo::DeepLll: return deep_lll_reduce<Int, FT>(b, p, cfg);
    case Algo::Bkz: return bkz_reduce<FT>(b, p, cfg);
  }
  throw Error("unknown algorithm");
}

template <class FT>
ReducednessReport verify_with(const Basis& b, const AlgoSpec& algo,
                              const ReductionParams& p, FloatConfig cfg) {
  switch (algo.algo) {
    case Algo::Lll:
    case Algo::Bkz: return is_lll_reduced<Int, FT>(b, p.delta, cfg);
    case Algo::PotLll:
    case Algo::PotLll2: return is_pot_reduced<Int, FT>(b, p.delta, cfg);
    case Algo::DeepLll:
      return is_deep_reduced<Int, FT>(b, p.delta, p.beta, cfg);
  }
  throw Error("unknown algorithm");
}

}  // namespace

ReductionStats run_reduction(Basis& b, const AlgoSpec& algo,
                             const ReductionParams& params, FloatKind kind) {
  ReductionParams p = params_for(algo, params);
  FloatConfig cfg;
  cfg.kind = kind;
  if (kind == FloatKind::HardwareDouble)
    return run_with<double>(b, algo, p, cfg);
  return run_with<long double>(b, algo, p, cfg);
}

ReducednessReport verify_reduction(const Basis& b, const AlgoSpec& algo,
                                   const ReductionParams& params,
                                   FloatKind kind) {
  ReductionParams p = params_for(algo, params);
  FloatConfig cfg;
  cfg.kind = kind;
  if (kind == FloatKind::HardwareDouble)
    return verify_with<double>(b, algo, p, cfg);
  return verify_with<long double>(b, algo, p, cfg);
}

std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records) {
  std::map<std::tuple<std::string, int, bool>, std::vector<const BenchRecord*>>
      groups;
  for (const auto& r : records)
    groups[{r.algo.label(), r.dim, r.preprocess}].push_back(&r);
  std::vector<AggregateRow> rows;
  for (const auto& [key, recs] : groups) {
    AggregateRow row;
    row.algo = std::get<0>(key);
    row.dim = std::get<1>(key);
    row.preprocess = std::get<2>(key);
    row.count = static_cast<int>(recs.size());
    double sum = 0, sum_log_t = 0, sum_t = 0;
    for (const auto* r : recs) {
      sum += r->hermite_root;
      double t = std::max(r->elapsed_s, 1e-9);
      sum_log_t += std::log(t);
      sum_t += r->elapsed_s;
    }
    const int n = row.count;
    row.mean_hermite_root = sum / n;
    row.mean_log_time = sum_log_t / n;
    row.mean_time = sum_t / n;
    if (n >= 2) {
      double ss = 0;
      for (const auto* r : recs) {
        double d = r->hermite_root - row.mean_hermite_root;
        ss += d * d;
      }
      double sd = std::sqrt(ss / (n - 1));
      boost::math::students_t_distribution<double> dist(n - 1);
      double t = boost::math::quantile(dist, 0.9995);
      double half = t * sd / std::sqrt(static_cast<double>(n));
      row.ci_low = row.mean_hermite_root - half;
      row.ci_high = row.mean_hermite_root + half;
    } else {
      row.ci_low = row.ci_high = row.mean_hermite_root;
    }
    rows.push_back(row);
  }
  return rows;
}

BenchResult run_bench(const BenchPlan& plan, std::ostream* progress) {
  struct Cell {
    int dim;
    std::uint64_t seed;
    AlgoSpec algo;
    bool preprocess;
  };
  std::vector<Cell> cells;
  for (int dim : plan.dims)
    for (bool pp : plan.preprocess_flags)
      for (const auto& algo : plan.algos)
        for (int s = 0; s < plan.seeds; ++s)
          cells.push_back({dim, static_cast<std::uint64_t>(s), algo, pp});

  BenchResult result;
  result.records.resize(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex io_mutex;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      const Cell& cell = cells[i];
      BenchRecord rec;
      rec.algo = cell.algo;
      rec.dim = cell.dim;
      rec.seed = cell.seed;
      rec.preprocess = cell.preprocess;
      try {
        GenSpec gen{cell.dim, cell.seed, plan.bits};
        Basis basis = generate_random_hnf(gen);
        FloatKind kind = pick_float_kind(basis, plan.forced_float);
        ReductionParams params;
        params.delta = plan.delta;
        params.preprocess = cell.preprocess;
        rec.stats = run_reduction(basis, cell.algo, params, kind);
        rec.elapsed_s = rec.stats.elapsed_s();
        FloatConfig cfg;
        cfg.kind = kind;
        rec.hermite_root =
            kind == FloatKind::HardwareDouble
                ? hermite_root_factor<Int, double>(basis, cfg)
                : hermite_root_factor<Int, long double>(basis, cfg);
        auto report = verify_reduction(basis, cell.algo, params, kind);
        if (!report.reduced) {
          rec.verified = false;
          rec.error = "oracle rejection: " + report.describe();
        } else if (rec.hermite_root >
                   worst_case_bound(cell.dim, plan.delta) * (1 + 1e-12)) {
          rec.verified = false;
          rec.error = "hermite factor exceeds the provable bound";
        }
      } catch (const std::exception& e) {
        rec.verified = false;
        rec.error = e.what();
      }
      if (!rec.verified) failures.fetch_add(1);
      if (progress) {
        std::lock_guard<std::mutex> lock(io_mutex);
        *progress << rec.algo.label() << " dim=" << rec.dim
                  << " seed=" << rec.seed
                  << " pp=" << (rec.preprocess ? 1 : 0);
        if (rec.verified)
          *progress << " hermite=" << rec.hermite_root
                    << " time=" << rec.elapsed_s << "s";
        else
          *progress << " FAILED: " << rec.error;
        *progress << std::endl;
      }
      result.records[i] = std::move(rec);
    }
  };

  unsigned threads = plan.threads > 0
                         ? static_cast<unsigned>(plan.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, cells.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.failures = failures.load();
  std::vector<BenchRecord> ok;
  for (const auto& r : result.records)
    if (r.verified) ok.push_back(r);
  result.aggregates = aggregate(ok);
  return result;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "algo,dim,seed,preprocess,hermite_root,elapsed_s,loop_iterations,"
         "insertions\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.hermite_root);
    out << r.algo.label() << ',' << r.dim << ',' << r.seed << ','
        << (r.preprocess ? 1 : 0) << ',' << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.elapsed_s);
    out << buf << ',' << r.stats.loop_iterations << ','
        << r.stats.insertions << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw ParseError(lineno, 1, "bad CSV record");
    BenchRecord r;
    auto spec = AlgoSpec::parse(fields[0]);
    if (!spec) throw ParseError(lineno, 1, "unknown algorithm " + fields[0]);
    r.algo = *spec;
    r.dim = std::stoi(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.preprocess = fields[3] == "1";
    r.hermite_root = std::stod(fields[4]);
    r.elapsed_s = std::stod(fields[5]);
    r.stats.loop_iterations = std::stoll(fields[6]);
    r.stats.insertions = std::stoll(fields[7]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_json_lines(std::ostream& out,
                      const std::vector<BenchRecord>& records) {
  for (const auto& r : records) {
    nlohmann::json j{{"algo", r.algo.label()},
                     {"dim", r.dim},
                     {"seed", r.seed},
                     {"preprocess", r.preprocess},
                     {"hermite_root", r.hermite_root},
                     {"elapsed_s", r.elapsed_s},
                     {"loop_iterations", r.stats.loop_iterations},
                     {"insertions", r.stats.insertions},
                     {"size_reduction_ops", r.stats.size_reduction_ops},
                     {"precision_warnings", r.stats.precision_warnings},
                     {"verified", r.verified}};
    if (!r.error.empty()) j["error"] = r.error;
    out << j.dump() << '\n';
  }
}

void print_aggregate_table(std::ostream& out,
                           const std::vector<AggregateRow>& rows) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %5s %3s %5s %-10s %-21s %-10s",
                "algo", "dim", "pp", "count", "mean_hrf", "99.9% CI",
                "mean_t[s]");
  out << buf << '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%-12s %5d %3d %5d %-10.5f [%.5f, %.5f]   %-10.3f",
                  r.algo.c_str(), r.dim, r.preprocess ? 1 : 0, r.count,
                  r.mean_hermite_root, r.ci_low, r.ci_high, r.mean_time);
    out << buf << '\n';
  }
}

}  // namespace latred
