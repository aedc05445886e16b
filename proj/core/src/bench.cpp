#include "borderforge/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"
#include "borderforge/sampling.hpp"
#include "toml_lite.hpp"

namespace borderforge {

VariantSpec parse_variant_spec(const std::string& name) {
  if (name == "bba") return {name, Variant::Bba, Elimination::Naive, false};
  if (name == "bba+fge") return {name, Variant::Bba, Elimination::Fge, false};
  if (name == "ibba") return {name, Variant::Ibba, Elimination::Naive, false};
  if (name == "ibba+fge") return {name, Variant::Ibba, Elimination::Fge, false};
  if (name == "obba") return {name, Variant::Ibba, Elimination::Naive, true};
  if (name == "obba+fge") return {name, Variant::Ibba, Elimination::Fge, true};
  throw ConfigError("unknown variant '" + name + "'");
}

namespace {

template <class T>
T as_int(const toml::Value& v, const std::string& key) {
  const auto* i = std::get_if<std::int64_t>(&v.v);
  if (i == nullptr || *i < 0) throw ConfigError("suite key '" + key + "' must be a nonnegative integer");
  return static_cast<T>(*i);
}

double as_double(const toml::Value& v, const std::string& key) {
  if (const auto* d = std::get_if<double>(&v.v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v.v)) return static_cast<double>(*i);
  throw ConfigError("suite key '" + key + "' must be a number");
}

std::string as_string(const toml::Value& v, const std::string& key) {
  const auto* s = std::get_if<std::string>(&v.v);
  if (s == nullptr) throw ConfigError("suite key '" + key + "' must be a string");
  return *s;
}

bool as_bool(const toml::Value& v, const std::string& key) {
  const auto* b = std::get_if<bool>(&v.v);
  if (b == nullptr) throw ConfigError("suite key '" + key + "' must be a boolean");
  return *b;
}

template <class T, class F>
std::vector<T> as_list(const toml::Value& v, const std::string& key, F convert) {
  std::vector<T> out;
  if (const auto* a = std::get_if<toml::Value::Array>(&v.v)) {
    for (const auto& x : *a) out.push_back(convert(x, key));
  } else {
    out.push_back(convert(v, key));
  }
  if (out.empty()) throw ConfigError("suite key '" + key + "' must not be empty");
  return out;
}

double mean(const std::vector<double>& x) {
  return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double stddev(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double median(std::vector<double> x) {
  if (x.empty()) return 0.0;
  std::sort(x.begin(), x.end());
  const std::size_t h = x.size() / 2;
  return x.size() % 2 == 1 ? x[h] : 0.5 * (x[h - 1] + x[h]);
}

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

SuiteConfig parse_suite(const std::string& text) {
  const toml::Document doc = toml::parse(text);
  SuiteConfig c;
  for (const auto& [key, v] : doc) {
    if (key == "fields") {
      c.fields = as_list<std::uint32_t>(v, key, as_int<std::uint32_t>);
    } else if (key == "nvars") {
      c.nvars = as_list<std::size_t>(v, key, as_int<std::size_t>);
    } else if (key == "degrees") {
      c.degrees = as_list<unsigned>(v, key, as_int<unsigned>);
    } else if (key == "count") {
      c.count = as_int<std::size_t>(v, key);
    } else if (key == "seed") {
      c.seed = as_int<std::uint64_t>(v, key);
    } else if (key == "rows") {
      c.rows = as_int<std::size_t>(v, key);
    } else if (key == "transform_degree") {
      c.transform_degree = as_int<unsigned>(v, key);
    } else if (key == "transform_terms") {
      c.transform_terms = as_int<std::size_t>(v, key);
    } else if (key == "degree_cap") {
      c.degree_cap = as_int<unsigned>(v, key);
    } else if (key == "variants") {
      c.variants = as_list<std::string>(v, key, as_string);
    } else if (key == "last_k") {
      c.last_k = as_int<std::size_t>(v, key);
    } else if (key == "threads") {
      c.threads = as_int<std::size_t>(v, key);
    } else if (key == "border_gap") {
      c.border_gap = as_bool(v, key);
    } else if (key == "oracle.kind") {
      c.oracle = as_string(v, key);
    } else if (key == "oracle.budget") {
      c.oracle_config.budget = as_int<std::size_t>(v, key);
    } else if (key == "oracle.gap_threshold") {
      c.oracle_config.gap_threshold = as_double(v, key);
    } else if (key == "oracle.truncation") {
      c.oracle_config.truncation = as_int<std::size_t>(v, key);
    } else {
      throw ConfigError("unknown suite key '" + key + "'");
    }
  }
  for (const auto& name : c.variants) parse_variant_spec(name);
  for (auto p : c.fields) PrimeField{p};
  for (auto n : c.nvars) {
    if (n < 1 || n > kMaxVars) throw ConfigError("nvars must lie in [1, " + std::to_string(kMaxVars) + "]");
  }
  for (auto d : c.degrees) {
    if (d < 1) throw ConfigError("generator degree must be at least 1");
  }
  c.oracle_config.validate();
  return c;
}

SuiteConfig load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open suite file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str());
}

double final_stage_ratio(const RunTrace& trace) {
  const std::uint64_t total = trace.total_ops();
  if (total == 0 || trace.enlargements.empty()) return 1.0;
  return static_cast<double>(trace.final_stage_ops()) / static_cast<double>(total);
}

std::vector<double> last_k_shares(const RunTrace& trace, std::size_t k) {
  const std::size_t begin = trace.final_stage_begin();
  const std::size_t end = trace.iterations.size();
  std::uint64_t stage = 0;
  for (std::size_t i = begin; i < end; ++i) stage += trace.iterations[i].ops;
  std::vector<double> out;
  std::uint64_t acc = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    if (end >= begin + j) acc += trace.iterations[end - j].ops;
    out.push_back(stage == 0 ? 1.0 : static_cast<double>(acc) / static_cast<double>(stage));
  }
  return out;
}

std::vector<std::pair<double, std::size_t>> border_gap_trace(const RunTrace& trace) {
  const std::size_t begin = trace.final_stage_begin();
  const std::size_t end = trace.iterations.size();
  std::vector<std::pair<double, std::size_t>> out;
  if (end <= begin) return out;
  const std::size_t T = end - begin - 1;
  for (std::size_t i = begin; i < end; ++i) {
    const auto& it = trace.iterations[i];
    out.emplace_back(static_cast<double>(it.basis_before) / static_cast<double>(it.universe_size), T - (i - begin));
  }
  return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("spearman needs equally long samples");
  if (x.size() < 2) return 0.0;
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

VariantResult run_variant(const Ring& ring, const std::vector<Polynomial>& F, const VariantSpec& spec,
                          const SuiteConfig& config, std::uint64_t seed) {
  SolveConfig sc;
  sc.variant = spec.base;
  sc.elimination = spec.elimination;
  sc.degree_cap = config.degree_cap;
  std::unique_ptr<Oracle> oracle;
  if (spec.oracle) {
    oracle = make_oracle(config.oracle, seed);
    sc.oracle = oracle.get();
    sc.oracle_config = config.oracle_config;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = compute_border_basis(ring, F, sc);
  const auto t1 = std::chrono::steady_clock::now();

  const RunTrace& tr = res.trace;
  VariantResult r;
  r.name = spec.name;
  r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.ops = tr.total_ops();
  r.final_stage_ops = tr.final_stage_ops();
  r.zero_reductions = tr.total_zero_reductions();
  r.final_stage_zero_reductions = tr.final_stage_zero_reductions();
  r.fallbacks = tr.fallbacks;
  r.enlargements = tr.enlargements.size();
  r.iterations = tr.iterations.size();
  r.oracle_calls = tr.oracle_calls;
  r.basis_hash = basis_hash(res.basis);
  r.final_stage_ratio = final_stage_ratio(tr);
  r.last_k_shares = last_k_shares(tr, config.last_k);
  return r;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BORDERFORGE_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<std::size_t>(n, cap);
  }
  return std::max<std::size_t>(n, 1);
}

std::vector<BenchRecord> run_benchmark(const SuiteConfig& config) {
  std::vector<BenchRecord> jobs;
  for (auto p : config.fields) {
    for (auto n : config.nvars) {
      for (auto D : config.degrees) {
        for (std::size_t i = 0; i < config.count; ++i) {
          BenchRecord r;
          r.id = jobs.size();
          r.p = p;
          r.n = n;
          r.degree = D;
          r.seed = config.seed + r.id;
          jobs.push_back(std::move(r));
        }
      }
    }
  }
  std::vector<VariantSpec> specs;
  for (const auto& name : config.variants) specs.push_back(parse_variant_spec(name));

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr error;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      {
        std::lock_guard lock(err_mu);
        if (error) return;
      }
      try {
        BenchRecord& rec = jobs[i];
        const Ring ring(rec.p, rec.n);
        InstanceParams ip;
        ip.max_degree = rec.degree;
        ip.rows = config.rows;
        ip.transform_degree = config.transform_degree;
        ip.transform_terms = config.transform_terms;
        const Instance inst = generate_instance(ring, ip, rec.seed);
        rec.order_ideal_size = inst.order_ideal.size();
        for (const auto& spec : specs) rec.variants.push_back(run_variant(ring, inst.F, spec, config, rec.seed));
        for (const auto& v : rec.variants) {
          if (v.basis_hash != rec.variants.front().basis_hash) {
            throw VariantDisagreement("instance " + std::to_string(rec.id) + ": " + v.name + " and " +
                                      rec.variants.front().name + " returned different bases");
          }
        }
        if (config.border_gap) {
          SolveConfig sc;
          sc.variant = Variant::Bba;
          sc.degree_cap = config.degree_cap;
          rec.border_gap = border_gap_trace(compute_border_basis(ring, inst.F, sc).trace);
        }
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(worker_count(config.threads), std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return jobs;
}

BenchSummary summarize(const std::vector<BenchRecord>& records) {
  BenchSummary s;
  std::map<std::string, std::vector<const VariantResult*>> by_name;
  for (const auto& r : records) {
    for (const auto& v : r.variants) by_name[v.name].push_back(&v);
  }
  std::map<std::string, std::vector<double>> walls;
  for (const auto& [name, runs] : by_name) {
    VariantSummary vs;
    vs.runs = runs.size();
    std::vector<double> w, ops, z, zf, fb, fsr;
    std::size_t k = 0;
    for (const auto* v : runs) {
      w.push_back(v->wall_seconds);
      ops.push_back(static_cast<double>(v->ops));
      z.push_back(static_cast<double>(v->zero_reductions));
      zf.push_back(static_cast<double>(v->final_stage_zero_reductions));
      fb.push_back(static_cast<double>(v->fallbacks));
      fsr.push_back(v->final_stage_ratio);
      k = std::max(k, v->last_k_shares.size());
    }
    vs.wall_mean = mean(w);
    vs.wall_std = stddev(w);
    vs.wall_median = median(w);
    vs.ops_mean = mean(ops);
    vs.zero_mean = mean(z);
    vs.zero_final_mean = mean(zf);
    vs.fallbacks_mean = mean(fb);
    vs.final_stage_ratio_mean = mean(fsr);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> sh;
      for (const auto* v : runs) {
        if (j < v->last_k_shares.size()) sh.push_back(v->last_k_shares[j]);
      }
      vs.last_k_share_mean.push_back(mean(sh));
    }
    walls[name] = w;
    s.variants[name] = vs;
  }
  if (walls.contains("ibba")) {
    const double m = mean(walls["ibba"]), md = median(walls["ibba"]);
    for (const auto& [name, w] : walls) {
      const double a = mean(w), b = median(w);
      s.speedup_vs_ibba[name] = {a > 0 ? m / a : 0.0, b > 0 ? md / b : 0.0};
    }
  }
  std::vector<double> gx, gy;
  for (const auto& r : records) {
    for (const auto& [g, d] : r.border_gap) {
      gx.push_back(g);
      gy.push_back(static_cast<double>(d));
    }
  }
  if (gx.size() >= 2) s.gap_spearman = spearman(gx, gy);
  return s;
}

std::string report_json(const SuiteConfig& config, const std::vector<BenchRecord>& records,
                        const BenchSummary& summary) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["config"] = {{"fields", config.fields},
                 {"nvars", config.nvars},
                 {"degrees", config.degrees},
                 {"count", config.count},
                 {"seed", config.seed},
                 {"rows", config.rows},
                 {"transform_degree", config.transform_degree},
                 {"transform_terms", config.transform_terms},
                 {"variants", config.variants},
                 {"oracle",
                  {{"kind", config.oracle},
                   {"budget", config.oracle_config.budget},
                   {"gap_threshold", config.oracle_config.gap_threshold},
                   {"truncation", config.oracle_config.truncation}}}};
  ordered_json sum = ordered_json::object();
  for (const auto& [name, v] : summary.variants) {
    sum[name] = {{"runs", v.runs},
                 {"wall_mean", v.wall_mean},
                 {"wall_std", v.wall_std},
                 {"wall_median", v.wall_median},
                 {"ops_mean", v.ops_mean},
                 {"zero_reductions_mean", v.zero_mean},
                 {"final_stage_zero_reductions_mean", v.zero_final_mean},
                 {"fallbacks_mean", v.fallbacks_mean},
                 {"final_stage_ratio_mean", v.final_stage_ratio_mean},
                 {"last_k_share_mean", v.last_k_share_mean}};
  }
  j["summary"] = sum;
  ordered_json sp = ordered_json::object();
  for (const auto& [name, r] : summary.speedup_vs_ibba) sp[name] = {{"ratio_of_means", r.first}, {"ratio_of_medians", r.second}};
  j["speedup_vs_ibba"] = sp;
  j["border_gap_spearman"] = summary.gap_spearman ? ordered_json(*summary.gap_spearman) : ordered_json(nullptr);
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json rv = ordered_json::array();
    for (const auto& v : r.variants) {
      rv.push_back({{"name", v.name},
                    {"wall_seconds", v.wall_seconds},
                    {"ops", v.ops},
                    {"final_stage_ops", v.final_stage_ops},
                    {"zero_reductions", v.zero_reductions},
                    {"final_stage_zero_reductions", v.final_stage_zero_reductions},
                    {"fallbacks", v.fallbacks},
                    {"enlargements", v.enlargements},
                    {"iterations", v.iterations},
                    {"oracle_calls", v.oracle_calls},
                    {"basis_hash", v.basis_hash},
                    {"final_stage_ratio", v.final_stage_ratio},
                    {"last_k_shares", v.last_k_shares}});
    }
    ordered_json gap = ordered_json::array();
    for (const auto& [g, d] : r.border_gap) gap.push_back({g, d});
    recs.push_back({{"id", r.id},
                    {"p", r.p},
                    {"n", r.n},
                    {"degree", r.degree},
                    {"seed", r.seed},
                    {"order_ideal_size", r.order_ideal_size},
                    {"variants", rv},
                    {"border_gap", gap}});
  }
  j["records"] = recs;
  return j.dump(2);
}

std::string report_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "id,p,n,degree,seed,order_ideal_size,variant,wall_seconds,ops,final_stage_ops,zero_reductions,"
         "final_stage_zero_reductions,fallbacks,enlargements,iterations,oracle_calls,final_stage_ratio,basis_hash\n";
  for (const auto& r : records) {
    for (const auto& v : r.variants) {
      out << r.id << ',' << r.p << ',' << r.n << ',' << r.degree << ',' << r.seed << ',' << r.order_ideal_size << ','
          << v.name << ',' << v.wall_seconds << ',' << v.ops << ',' << v.final_stage_ops << ',' << v.zero_reductions
          << ',' << v.final_stage_zero_reductions << ',' << v.fallbacks << ',' << v.enlargements << ','
          << v.iterations << ',' << v.oracle_calls << ',' << v.final_stage_ratio << ',' << v.basis_hash << '\n';
    }
  }
  return out.str();
}

}  // namespace borderforge
