#include "assoc60/report_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace assoc60 {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = kDigits[v & 0xf];
    v >>= 4;
  }
  return s;
}

namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_slots_csv(std::ostream& out, std::span<const SlotResult> slots) {
  out << "slot,feasible,n_pairs,p_daa,d_star,p_exact,p_relax,p_rand,p_rssi,"
         "jain_daa,jain_rand,jain_rssi,jain_exact,relative_gap,"
         "relative_gap_best,gap_bound,daa_best_iter,exact_nodes\n";
  for (const auto& s : slots) {
    out << s.slot << ',' << (s.feasible ? 1 : 0) << ',';
    if (!s.feasible) {
      out << ",,,,,,,,,,,,,,,\n";
      continue;
    }
    out << s.n_pairs << ',' << format_double(s.p_daa) << ','
        << format_double(s.d_star) << ',' << cell(s.p_exact) << ','
        << cell(s.p_relax) << ',' << format_double(s.p_rand) << ','
        << format_double(s.p_rssi) << ',' << format_double(s.jain_daa) << ','
        << format_double(s.jain_rand) << ',' << format_double(s.jain_rssi)
        << ',' << cell(s.jain_exact) << ',' << cell(s.relative_gap) << ','
        << cell(s.relative_gap_best) << ',' << format_double(s.gap_bound)
        << ',' << s.daa_best_iter << ',';
    if (s.exact_nodes) out << *s.exact_nodes;
    out << '\n';
  }
}

void write_curves_csv(std::ostream& out, const Aggregate& agg) {
  out << "k,P_k,J_k\n";
  for (std::size_t k = 0; k < agg.p_curve.size(); ++k) {
    out << (k + 1) << ',' << format_double(agg.p_curve[k]) << ','
        << format_double(agg.j_curve[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::string_view parameter,
                     std::span<const SweepRow> rows) {
  out << parameter
      << ",slots_feasible,slots_infeasible,P_daa,D_star,P_star,P_relax,P_rand,"
         "P_rssi,J_daa,J_star,J_rand,J_rssi,ave_rdg,ave_rdg_best,ave_dg,"
         "ave_dg_best,gap_bound,mean_best_iter,error\n";
  for (const auto& r : rows) {
    out << format_double(r.value) << ',';
    if (!r.aggregate) {
      out << ",,,,,,,,,,,,,,,,,,";
      std::string err = r.error;
      for (char& c : err) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << err << '\n';
      continue;
    }
    const Aggregate& a = *r.aggregate;
    out << a.slots_feasible << ',' << a.slots_infeasible << ','
        << format_double(a.p_daa) << ',' << format_double(a.d_star) << ','
        << cell(a.p_exact) << ',' << cell(a.p_relax) << ','
        << format_double(a.p_rand) << ',' << format_double(a.p_rssi) << ','
        << format_double(a.jain_daa) << ',' << cell(a.jain_exact) << ','
        << format_double(a.jain_rand) << ',' << format_double(a.jain_rssi)
        << ',' << cell(a.ave_rdg) << ',' << cell(a.ave_rdg_best) << ','
        << cell(a.ave_dg) << ',' << cell(a.ave_dg_best) << ','
        << format_double(a.gap_bound) << ',' << cell(a.mean_best_iter)
        << ",\n";
  }
}

std::string aggregate_to_json(const Aggregate& a, int indent) {
  nlohmann::ordered_json j;
  j["slots_total"] = a.slots_total;
  j["slots_feasible"] = a.slots_feasible;
  j["slots_infeasible"] = a.slots_infeasible;
  j["slots_exact"] = a.slots_exact;
  j["P_daa"] = a.p_daa;
  j["D_star"] = a.d_star;
  j["P_star"] = opt(a.p_exact);
  j["P_relax"] = opt(a.p_relax);
  j["P_rand"] = a.p_rand;
  j["P_rssi"] = a.p_rssi;
  j["J_daa"] = a.jain_daa;
  j["J_star"] = opt(a.jain_exact);
  j["J_rand"] = a.jain_rand;
  j["J_rssi"] = a.jain_rssi;
  j["ave_rdg"] = opt(a.ave_rdg);
  j["ave_rdg_best"] = opt(a.ave_rdg_best);
  j["ave_dg"] = opt(a.ave_dg);
  j["ave_dg_best"] = opt(a.ave_dg_best);
  j["gap_bound"] = a.gap_bound;
  j["mean_best_iter"] = opt(a.mean_best_iter);
  return j.dump(indent);
}

}  // namespace assoc60
