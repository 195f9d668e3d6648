#pragma once

// JSON instance files, verification reports, and instance sweeps.

#include "linkdet/theorems.hpp"

#include <json.hpp>

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace linkdet {

inline json instance_to_json(const InstanceParams& p) {
  return {{"d", p.d},
          {"n", p.n},
          {"r1", p.r1},
          {"rn", p.rn},
          {"c", p.c},
          {"r", p.r},
          {"s_mode", to_string(p.s_mode)},
          {"field", p.field.to_string()},
          {"degree_bound", p.degree_bound}};
}

/// Missing degree_bound defaults to r + 3.
inline InstanceParams instance_from_json(const json& j) {
  InstanceParams p;
  try {
    p.d = j.at("d").get<int>();
    p.n = j.value("n", 1);
    p.r1 = j.at("r1").get<int>();
    p.rn = j.value("rn", 0);
    p.c = j.value("c", std::vector<int>{});
    p.r = j.at("r").get<int>();
    p.s_mode = parse_smode(j.value("s_mode", std::string("zero")));
    p.field = FieldSpec::parse(j.value("field", std::string("Fp:32003")));
    p.degree_bound = j.value("degree_bound", p.r + 3);
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance: ") + e.what());
  }
  p.validate();
  return p;
}

inline InstanceParams load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return instance_from_json(json::parse(in));
}

inline json check_to_json(const CheckResult& c, bool timing) {
  json j{{"name", c.name}, {"pass", c.pass}};
  if (!c.witness.is_null()) j["witness"] = c.witness;
  if (!c.data.is_null()) j["data"] = c.data;
  if (timing) j["millis"] = c.millis;
  return j;
}

inline json report_to_json(const VerificationReport& rep, bool timing = true) {
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto& c : rep.checks) {
    checks.push_back(check_to_json(c, timing));
    passed += c.pass;
  }
  json j{{"checks", checks},
         {"summary", {{"total", rep.checks.size()}, {"passed", passed}, {"failed", rep.checks.size() - passed}, {"all_pass", rep.all_pass()}}}};
  j["instance"] = rep.instance ? instance_to_json(*rep.instance) : json(nullptr);
  return j;
}

inline std::string report_summary_text(const VerificationReport& rep) {
  std::ostringstream os;
  if (rep.instance) os << "instance " << rep.instance->key() << "\n";
  for (const auto& c : rep.checks) os << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
  return os.str();
}

/// Instance ranges; every nondecreasing c in [0, d]^(n-1) is enumerated.
struct SweepGrid {
  int d_min = 2, d_max = 5;
  int n_min = 1, n_max = 4;
  int rows_min = 2, rows_max = 4;
  int r_min = 1, r_max = 3;
  std::vector<SMode> modes{SMode::Zero};
  FieldSpec field{};
  /// degree_bound = r + degree_offset
  int degree_offset = 3;
};

inline void nondecreasing_vectors(int len, int lo, int hi, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int v = cur.empty() ? lo : cur.back(); v <= hi; ++v) {
    cur.push_back(v);
    nondecreasing_vectors(len, lo, hi, cur, out);
    cur.pop_back();
  }
}

/// Instances with r < min(d, r1 + rn), sorted by key.
inline std::vector<InstanceParams> enumerate_grid(const SweepGrid& g) {
  std::vector<InstanceParams> out;
  for (int d = g.d_min; d <= g.d_max; ++d)
    for (int rows = g.rows_min; rows <= g.rows_max; ++rows)
      for (int r1 = 1; r1 <= rows; ++r1)
        for (int r = g.r_min; r <= g.r_max; ++r) {
          if (r >= std::min(d, rows)) continue;
          for (int n = g.n_min; n <= g.n_max; ++n) {
            std::vector<std::vector<int>> cs;
            std::vector<int> cur;
            nondecreasing_vectors(n - 1, 0, d, cur, cs);
            for (const auto& c : cs)
              for (SMode m : g.modes) {
                InstanceParams p;
                p.d = d;
                p.n = n;
                p.r1 = r1;
                p.rn = rows - r1;
                p.c = c;
                p.r = r;
                p.s_mode = m;
                p.field = g.field;
                p.degree_bound = r + g.degree_offset;
                if (rows * d > kMaxXVars) continue;
                out.push_back(p);
              }
          }
        }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return out;
}

/// Applies fn to each item on `jobs` threads; results keep input order.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, int jobs, Fn fn) -> std::vector<decltype(fn(items.front()))> {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = items.size();
      }
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace linkdet
