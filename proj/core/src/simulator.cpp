#include "bis/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "bis/parallel.hpp"
#include "bis/rng.hpp"

namespace bis {

namespace {

// Plug-in mutual information in bits of a weighted pair law; weights need
// not be normalized. Iteration over std::map keeps the summation order
// deterministic.
double mi_bits_from_pairs(
    const std::map<std::pair<std::uint64_t, std::uint64_t>, double>& joint) {
  double total = 0.0;
  for (const auto& [key, w] : joint) total += w;
  if (total <= 0.0) return 0.0;
  std::map<std::uint64_t, double> ma, mb;
  for (const auto& [key, w] : joint) {
    ma[key.first] += w;
    mb[key.second] += w;
  }
  double mi = 0.0;
  for (const auto& [key, w] : joint) {
    const double p = w / total;
    if (p < kZeroMass) continue;
    const double pa = ma[key.first] / total;
    const double pb = mb[key.second] / total;
    mi += p * std::log2(p / (pa * pb));
  }
  return std::max(0.0, mi);
}

double mi_bits_dense(std::span<const double> joint, std::size_t rows,
                     std::size_t cols) {
  std::vector<double> ma(rows, 0.0), mb(cols, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double w = joint[r * cols + c];
      ma[r] += w;
      mb[c] += w;
      total += w;
    }
  }
  if (total <= 0.0) return 0.0;
  double mi = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double p = joint[r * cols + c] / total;
      if (p < kZeroMass) continue;
      mi += p * std::log2(p * total * total / (ma[r] * mb[c]));
    }
  }
  return std::max(0.0, mi);
}

std::vector<Symbol> draw_iid(const ProbVector& dist, std::size_t n,
                             std::mt19937_64& gen) {
  std::vector<Symbol> out(n);
  for (Symbol& s : out) {
    s = static_cast<Symbol>(rng::sample_index(dist.values(), gen));
  }
  return out;
}

std::vector<Symbol> draw_through_channel(std::span<const Symbol> input,
                                         const ChannelMatrix& channel,
                                         std::mt19937_64& gen) {
  std::vector<Symbol> out(input.size());
  for (std::size_t t = 0; t < input.size(); ++t) {
    out[t] = static_cast<Symbol>(
        rng::sample_index(channel.row(input[t]), gen));
  }
  return out;
}

}  // namespace

void validate_config(const SimConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("blocklength n must be >= 1");
  for (std::size_t size :
       {cfg.m_i, cfg.m_gamma, cfg.m_c_rest, cfg.m_g_rest, cfg.m_m}) {
    if (size < 1) throw std::invalid_argument("set sizes must be >= 1");
  }
  if (!(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
}

KeySplit split_key(std::size_t k, std::size_t radix_rest,
                   std::size_t m_gamma) {
  if (radix_rest == 0 || m_gamma == 0) {
    throw std::invalid_argument("key radices must be >= 1");
  }
  if (k >= m_gamma * radix_rest) {
    throw std::out_of_range("key index out of range");
  }
  return KeySplit{k / radix_rest, k % radix_rest};
}

std::size_t join_key(KeySplit ks, std::size_t radix_rest,
                     std::size_t m_gamma) {
  if (radix_rest == 0 || m_gamma == 0) {
    throw std::invalid_argument("key radices must be >= 1");
  }
  if (ks.shared >= m_gamma || ks.rest >= radix_rest) {
    throw std::out_of_range("key split out of range");
  }
  return ks.shared * radix_rest + ks.rest;
}

std::size_t mask_key(std::size_t s_c, std::size_t s1, std::size_t m_c) {
  if (s_c >= m_c || s1 >= m_c) throw std::out_of_range("key out of range");
  return (s_c + s1) % m_c;
}

std::size_t unmask_key(std::size_t masked, std::size_t s1, std::size_t m_c) {
  if (masked >= m_c || s1 >= m_c) throw std::out_of_range("key out of range");
  return (masked + m_c - s1) % m_c;
}

Codebook::Codebook(std::size_t n, std::size_t u_size, std::size_t s1_count,
                   std::size_t s2_count, std::size_t m_count,
                   std::vector<Symbol> symbols)
    : n_(n),
      u_size_(u_size),
      s1_count_(s1_count),
      s2_count_(s2_count),
      m_count_(m_count),
      symbols_(std::move(symbols)) {
  if (n_ == 0 || u_size_ == 0 || s1_count_ == 0 || s2_count_ == 0 ||
      m_count_ == 0) {
    throw std::invalid_argument("codebook dimensions must be >= 1");
  }
  if (symbols_.size() != size() * n_) {
    throw std::invalid_argument("codebook symbol count mismatch");
  }
  for (Symbol s : symbols_) {
    if (s >= u_size_) {
      throw std::invalid_argument("codebook symbol outside U alphabet");
    }
  }
}

CodewordIndex Codebook::unflatten(std::size_t flat) const {
  CodewordIndex v;
  v.m = flat % m_count_;
  flat /= m_count_;
  v.s2 = flat % s2_count_;
  v.s1 = flat / s2_count_;
  return v;
}

Codebook generate_codebook(const SimConfig& cfg, const ProbVector& p_u,
                           std::mt19937_64& gen) {
  validate_config(cfg);
  const std::size_t count = cfg.codebook_size();
  std::vector<Symbol> symbols;
  symbols.reserve(count * cfg.n);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t t = 0; t < cfg.n; ++t) {
      symbols.push_back(
          static_cast<Symbol>(rng::sample_index(p_u.values(), gen)));
    }
  }
  return Codebook(cfg.n, p_u.size(), cfg.chosen_key_count(), cfg.m_g_rest,
                  cfg.m_m, std::move(symbols));
}

TypicalityTest::TypicalityTest(const JointTable& pair_joint, double epsilon,
                               std::size_t n)
    : n_(n) {
  if (pair_joint.axes().size() != 2) {
    throw std::invalid_argument("typicality needs a two-axis joint");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (n == 0) throw std::invalid_argument("blocklength must be >= 1");
  a_size_ = pair_joint.axes()[0].size;
  u_size_ = pair_joint.axes()[1].size;
  lo_.resize(a_size_ * u_size_);
  hi_.resize(a_size_ * u_size_);
  const auto mass = pair_joint.mass();
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const double p = mass[i];
    if (p < kZeroMass) {
      lo_[i] = 0;
      hi_[i] = 0;  // zero-probability pairs must not occur
      continue;
    }
    lo_[i] = static_cast<std::int64_t>(
        std::ceil(dn * p * (1.0 - epsilon) - 1e-9));
    if (lo_[i] < 0) lo_[i] = 0;
    hi_[i] = static_cast<std::int64_t>(
        std::floor(dn * p * (1.0 + epsilon) + 1e-9));
    if (hi_[i] > static_cast<std::int64_t>(n)) {
      hi_[i] = static_cast<std::int64_t>(n);
    }
  }
}

bool TypicalityTest::typical(std::span<const Symbol> a,
                             std::span<const Symbol> u) const {
  if (a.size() != n_ || u.size() != n_) {
    throw std::invalid_argument("sequence length mismatch");
  }
  constexpr std::size_t kStack = 64;
  std::int64_t stack_counts[kStack] = {};
  std::vector<std::int64_t> heap_counts;
  std::int64_t* counts = stack_counts;
  const std::size_t cells = a_size_ * u_size_;
  if (cells > kStack) {
    heap_counts.assign(cells, 0);
    counts = heap_counts.data();
  }
  for (std::size_t t = 0; t < n_; ++t) {
    if (a[t] >= a_size_ || u[t] >= u_size_) {
      throw std::out_of_range("symbol outside alphabet");
    }
    ++counts[a[t] * u_size_ + u[t]];
  }
  for (std::size_t i = 0; i < cells; ++i) {
    if (counts[i] < lo_[i] || counts[i] > hi_[i]) return false;
  }
  return true;
}

std::optional<Enrollment> enroll(std::span<const Symbol> y, std::size_t s_c,
                                 const Codebook& cb, const SimConfig& cfg,
                                 const TypicalityTest& yu_test,
                                 std::mt19937_64& gen) {
  const std::size_t m_c = cfg.chosen_key_count();
  if (s_c >= m_c) throw std::out_of_range("chosen key out of range");
  std::vector<CodewordIndex> matches;
  for (std::size_t s1 = 0; s1 < cb.s1_count(); ++s1) {
    for (std::size_t s2 = 0; s2 < cb.s2_count(); ++s2) {
      for (std::size_t m = 0; m < cb.m_count(); ++m) {
        const CodewordIndex v{s1, s2, m};
        if (yu_test.typical(y, cb.sequence(v))) matches.push_back(v);
      }
    }
  }
  if (matches.empty()) return std::nullopt;
  const CodewordIndex pick = matches[rng::uniform_index(matches.size(), gen)];
  const KeySplit sc_split = split_key(s_c, cfg.m_c_rest, cfg.m_gamma);
  return Enrollment{
      EnrollmentRecord{pick.m, mask_key(s_c, pick.s1, m_c),
                       KeySplit{sc_split.shared, pick.s2}},
      pick,
  };
}

std::optional<IdentifyResult> identify(
    std::span<const Symbol> z,
    std::span<const std::optional<EnrollmentRecord>> helper_db,
    const Codebook& cb, const SimConfig& cfg, const TypicalityTest& zu_test) {
  struct Candidate {
    std::size_t i, s1, s2;
  };
  std::optional<Candidate> unique;
  for (std::size_t i = 0; i < helper_db.size(); ++i) {
    if (!helper_db[i]) continue;
    const std::size_t m = helper_db[i]->helper_m;
    for (std::size_t s1 = 0; s1 < cb.s1_count(); ++s1) {
      for (std::size_t s2 = 0; s2 < cb.s2_count(); ++s2) {
        if (!zu_test.typical(z, cb.sequence(CodewordIndex{s1, s2, m}))) {
          continue;
        }
        if (unique) return std::nullopt;  // multiple candidates
        unique = Candidate{i, s1, s2};
      }
    }
  }
  if (!unique) return std::nullopt;
  const std::size_t m_c = cfg.chosen_key_count();
  const std::size_t s_c_hat =
      unmask_key(helper_db[unique->i]->helper_masked, unique->s1, m_c);
  const KeySplit sc_split = split_key(s_c_hat, cfg.m_c_rest, cfg.m_gamma);
  return IdentifyResult{unique->i, s_c_hat,
                        KeySplit{sc_split.shared, unique->s2}, unique->s1,
                        unique->s2};
}

std::string_view event_name(ErrorEvent e) {
  switch (e) {
    case ErrorEvent::none: return "none";
    case ErrorEvent::e1: return "E1";
    case ErrorEvent::e2: return "E2";
    case ErrorEvent::e3: return "E3";
    case ErrorEvent::e4: return "E4";
    case ErrorEvent::e5: return "E5";
    case ErrorEvent::e6: return "E6";
  }
  return "?";
}

DecodeFlags scan_decode_events(
    std::span<const Symbol> z, const TrialTruth& truth,
    std::span<const std::optional<EnrollmentRecord>> helper_db,
    const Codebook& cb, const SimConfig& cfg, const TypicalityTest& zu_test) {
  (void)cfg;
  DecodeFlags flags;
  if (truth.encoder_failed) return flags;
  const CodewordIndex& v = truth.chosen;
  flags.true_not_typical = !zu_test.typical(z, cb.sequence(v));
  for (std::size_t s1 = 0; s1 < cb.s1_count(); ++s1) {
    for (std::size_t s2 = 0; s2 < cb.s2_count(); ++s2) {
      if (s1 == v.s1 && s2 == v.s2) continue;
      if (!zu_test.typical(z, cb.sequence(CodewordIndex{s1, s2, v.m}))) {
        continue;
      }
      if (s1 == v.s1) {
        flags.wrong_s2_same_s1 = true;
      } else if (s2 == v.s2) {
        flags.wrong_s1_same_s2 = true;
      } else {
        flags.both_wrong_same_m = true;
      }
    }
  }
  for (std::size_t i = 0; i < helper_db.size(); ++i) {
    if (i == truth.w || !helper_db[i]) continue;
    const std::size_t m = helper_db[i]->helper_m;
    for (std::size_t s1 = 0; s1 < cb.s1_count() && !flags.other_user_hit;
         ++s1) {
      for (std::size_t s2 = 0; s2 < cb.s2_count(); ++s2) {
        if (zu_test.typical(z, cb.sequence(CodewordIndex{s1, s2, m}))) {
          flags.other_user_hit = true;
          break;
        }
      }
    }
    if (flags.other_user_hit) break;
  }
  return flags;
}

ErrorEvent classify_error(const TrialTruth& truth, const DecodeFlags& flags) {
  if (truth.encoder_failed) return ErrorEvent::e1;
  if (flags.true_not_typical) return ErrorEvent::e2;
  if (flags.wrong_s2_same_s1) return ErrorEvent::e3;
  if (flags.wrong_s1_same_s2) return ErrorEvent::e4;
  if (flags.both_wrong_same_m) return ErrorEvent::e5;
  if (flags.other_user_hit) return ErrorEvent::e6;
  return ErrorEvent::none;
}

namespace {

struct TrialData {
  ErrorEvent event = ErrorEvent::none;
  std::size_t w = 0;
  std::optional<std::size_t> w_hat;
  bool correct = false;
  bool user0_enrolled = false;
  std::uint64_t sc0 = 0, sg0 = 0, j0 = 0;
  std::vector<Symbol> x0;
};

}  // namespace

SimReport run_monte_carlo(const SimConfig& cfg, const DiscreteBIS& bis,
                          const TestChannel& test, unsigned threads,
                          std::vector<TrialRecord>* transcript) {
  validate_config(cfg);
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");

  const JointTable joint = induced_joint(bis, test);
  const std::vector<std::string> yu_axes{"Y", "U"};
  const std::vector<std::string> zu_axes{"Z", "U"};
  const TypicalityTest yu_test(joint.marginal(yu_axes), cfg.epsilon, cfg.n);
  const TypicalityTest zu_test(joint.marginal(zu_axes), cfg.epsilon, cfg.n);
  const ProbVector p_u = joint.axis_marginal("U");

  std::mt19937_64 cb_gen = rng::substream(cfg.seed, 0);
  const Codebook cb = generate_codebook(cfg, p_u, cb_gen);

  const std::size_t m_c = cfg.chosen_key_count();
  std::vector<TrialData> data(cfg.trials);

  parallel_for(cfg.trials, threads, [&](std::size_t t) {
    std::mt19937_64 gen = rng::substream(cfg.seed, 1 + t);
    std::vector<std::vector<Symbol>> xs(cfg.m_i);
    std::vector<std::size_t> scs(cfg.m_i);
    std::vector<std::optional<Enrollment>> enrollments(cfg.m_i);
    std::vector<std::optional<EnrollmentRecord>> db(cfg.m_i);
    for (std::size_t i = 0; i < cfg.m_i; ++i) {
      xs[i] = draw_iid(bis.px, cfg.n, gen);
      const std::vector<Symbol> y =
          draw_through_channel(xs[i], bis.enrollment, gen);
      scs[i] = rng::uniform_index(m_c, gen);
      enrollments[i] = enroll(y, scs[i], cb, cfg, yu_test, gen);
      if (enrollments[i]) db[i] = enrollments[i]->record;
    }
    const std::size_t w = rng::uniform_index(cfg.m_i, gen);
    const std::vector<Symbol> z =
        draw_through_channel(xs[w], bis.identification, gen);

    TrialTruth truth;
    truth.encoder_failed = !enrollments[w].has_value();
    truth.w = w;
    truth.s_c = scs[w];
    if (enrollments[w]) {
      truth.s_g = enrollments[w]->record.generated_key;
      truth.chosen = enrollments[w]->chosen;
    }

    const auto result = identify(z, db, cb, cfg, zu_test);
    TrialData& out = data[t];
    out.w = w;
    if (result) out.w_hat = result->w;
    out.correct = result && !truth.encoder_failed && result->w == w &&
                  result->s_c == truth.s_c && result->s_g == truth.s_g;
    out.event = classify_error(
        truth, scan_decode_events(z, truth, db, cb, cfg, zu_test));

    if (enrollments[0]) {
      out.user0_enrolled = true;
      out.sc0 = scs[0];
      out.sg0 = join_key(enrollments[0]->record.generated_key, cfg.m_g_rest,
                         cfg.m_gamma);
      out.j0 = enrollments[0]->record.helper_m * m_c +
               enrollments[0]->record.helper_masked;
      out.x0 = xs[0];
    }
  });

  SimReport report;
  report.trials = cfg.trials;
  if (transcript) {
    transcript->clear();
    transcript->reserve(cfg.trials);
  }
  std::size_t wrong = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> kc_joint, sj_joint,
      xj_joint;
  std::map<std::vector<Symbol>, std::uint64_t> x_ids;
  const std::size_t m_g = cfg.generated_key_count();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const TrialData& d = data[t];
    if (!d.correct) ++wrong;
    if (d.event != ErrorEvent::none) {
      ++report.event_tallies[static_cast<std::size_t>(d.event) - 1];
    }
    if (transcript) {
      transcript->push_back(TrialRecord{t, d.event, d.w, d.w_hat, d.correct});
    }
    if (d.user0_enrolled) {
      kc_joint[{d.sc0, d.sg0}] += 1.0;
      sj_joint[{d.sc0 * m_g + d.sg0, d.j0}] += 1.0;
      const auto [it, inserted] =
          x_ids.try_emplace(d.x0, static_cast<std::uint64_t>(x_ids.size()));
      xj_joint[{it->second, d.j0}] += 1.0;
    }
  }
  report.error_rate =
      static_cast<double>(wrong) / static_cast<double>(cfg.trials);
  report.key_correlation = LeakageValue{mi_bits_from_pairs(kc_joint), false};
  report.secrecy_leakage = LeakageValue{mi_bits_from_pairs(sj_joint), false};
  report.privacy_leakage = LeakageValue{mi_bits_from_pairs(xj_joint), false};
  return report;
}

void write_transcript_csv(std::ostream& os,
                          const std::vector<TrialRecord>& records) {
  os << "trial,event,w,w_hat,correct\n";
  for (const TrialRecord& r : records) {
    os << r.trial << ',' << event_name(r.event) << ',' << r.w << ',';
    if (r.w_hat) {
      os << *r.w_hat;
    } else {
      os << -1;
    }
    os << ',' << (r.correct ? 1 : 0) << '\n';
  }
}

ExactLeakage exact_leakage(const SimConfig& cfg, const DiscreteBIS& bis,
                           const TestChannel& test, const Codebook& cb) {
  validate_config(cfg);
  if (cb.n() != cfg.n || cb.size() != cfg.codebook_size() ||
      cb.s1_count() != cfg.chosen_key_count() ||
      cb.s2_count() != cfg.m_g_rest || cb.m_count() != cfg.m_m) {
    throw std::invalid_argument("codebook does not match configuration");
  }
  if (cb.u_size() != test.u_size()) {
    throw std::invalid_argument("codebook alphabet does not match the test channel");
  }

  const double nd = static_cast<double>(cfg.n);
  const double log2_y_cb = nd * std::log2(double(bis.y_size())) +
                           std::log2(double(cfg.codebook_size()));
  const double log2_xy = nd * std::log2(double(bis.x_size())) +
                         nd * std::log2(double(bis.y_size()));
  const double log2_secrecy = std::log2(double(cfg.codebook_size())) +
                              std::log2(double(cfg.chosen_key_count()));
  const double log2_xm =
      nd * std::log2(double(bis.x_size())) + std::log2(double(cfg.m_m));
  constexpr double kGuardBits = 24.0;
  if (log2_y_cb > kGuardBits || log2_xy > kGuardBits ||
      log2_secrecy > kGuardBits || log2_xm > kGuardBits) {
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "exact enumeration exceeds 2^24 states: "
                  "log2 |Y|^n*codebook = %.2f, log2 |X|^n*|Y|^n = %.2f, "
                  "log2 codebook*M_C = %.2f, log2 |X|^n*|M| = %.2f",
                  log2_y_cb, log2_xy, log2_secrecy, log2_xm);
    throw EnumerationGuardError(msg, log2_y_cb, log2_xy, log2_secrecy,
                                log2_xm);
  }

  const JointTable joint = induced_joint(bis, test);
  const std::vector<std::string> yu_axes{"Y", "U"};
  const TypicalityTest yu_test(joint.marginal(yu_axes), cfg.epsilon, cfg.n);

  const std::size_t ny = bis.y_size();
  const std::size_t nx = bis.x_size();
  std::size_t y_states = 1, x_states = 1;
  for (std::size_t t = 0; t < cfg.n; ++t) {
    y_states *= ny;
    x_states *= nx;
  }
  const ProbVector p_y_sym = joint.axis_marginal("Y");

  // Pass 1 over y^n: joint law R of the committed tuple V and the per-y
  // conditional of the stored dummy message.
  const std::size_t cb_size = cfg.codebook_size();
  const std::size_t m_c = cfg.chosen_key_count();
  const std::size_t m_g = cfg.generated_key_count();
  std::vector<double> tuple_law(cb_size, 0.0);
  std::vector<double> pm_given_y(y_states * cfg.m_m, 0.0);
  std::vector<Symbol> y_seq(cfg.n);
  std::vector<std::size_t> matches;
  for (std::size_t yi = 0; yi < y_states; ++yi) {
    std::size_t rem = yi;
    for (std::size_t t = cfg.n; t-- > 0;) {
      y_seq[t] = static_cast<Symbol>(rem % ny);
      rem /= ny;
    }
    double py = 1.0;
    for (Symbol s : y_seq) py *= p_y_sym[s];
    matches.clear();
    for (std::size_t flat = 0; flat < cb_size; ++flat) {
      if (yu_test.typical(y_seq, cb.sequence(cb.unflatten(flat)))) {
        matches.push_back(flat);
      }
    }
    if (matches.empty()) matches.push_back(0);  // fallback tuple (0,0,0)
    const double tie = 1.0 / static_cast<double>(matches.size());
    for (std::size_t flat : matches) {
      tuple_law[flat] += py * tie;
      pm_given_y[yi * cfg.m_m + cb.unflatten(flat).m] += tie;
    }
  }

  // Marginals of the tuple law.
  std::vector<double> q_s1(m_c, 0.0), q_s2(cfg.m_g_rest, 0.0);
  for (std::size_t flat = 0; flat < cb_size; ++flat) {
    const CodewordIndex v = cb.unflatten(flat);
    q_s1[v.s1] += tuple_law[flat];
    q_s2[v.s2] += tuple_law[flat];
  }

  ExactLeakage out;

  // I(S_C; S_G): S_G = (shared digits of S_C, S_2) with S_2 independent of
  // the uniform S_C.
  {
    std::vector<double> kc(m_c * m_g, 0.0);
    for (std::size_t s_c = 0; s_c < m_c; ++s_c) {
      const std::size_t shared = split_key(s_c, cfg.m_c_rest, cfg.m_gamma).shared;
      for (std::size_t s2 = 0; s2 < cfg.m_g_rest; ++s2) {
        const std::size_t s_g =
            join_key(KeySplit{shared, s2}, cfg.m_g_rest, cfg.m_gamma);
        kc[s_c * m_g + s_g] = q_s2[s2] / static_cast<double>(m_c);
      }
    }
    out.key_correlation_bits = mi_bits_dense(kc, m_c, m_g);
  }

  // I(S_C, S_G; J) over the support of ((s_C, s_G), (m, masked)).
  {
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> sj;
    for (std::size_t flat = 0; flat < cb_size; ++flat) {
      if (tuple_law[flat] <= 0.0) continue;
      const CodewordIndex v = cb.unflatten(flat);
      const double w = tuple_law[flat] / static_cast<double>(m_c);
      for (std::size_t s_c = 0; s_c < m_c; ++s_c) {
        const std::size_t shared =
            split_key(s_c, cfg.m_c_rest, cfg.m_gamma).shared;
        const std::size_t s_g =
            join_key(KeySplit{shared, v.s2}, cfg.m_g_rest, cfg.m_gamma);
        const std::size_t j = v.m * m_c + mask_key(s_c, v.s1, m_c);
        sj[{s_c * m_g + s_g, j}] += w;
      }
    }
    out.secrecy_leakage_bits = mi_bits_from_pairs(sj);
  }

  // I(S_C; (S_C + S_1) mod M_C): the one-time-pad component in isolation.
  {
    std::vector<double> otp(m_c * m_c, 0.0);
    for (std::size_t s_c = 0; s_c < m_c; ++s_c) {
      for (std::size_t s1 = 0; s1 < m_c; ++s1) {
        otp[s_c * m_c + mask_key(s_c, s1, m_c)] +=
            q_s1[s1] / static_cast<double>(m_c);
      }
    }
    out.otp_masked_leakage_bits = mi_bits_dense(otp, m_c, m_c);
  }

  // I(X^n; J): the masked component is uniform and independent of (X^n, M),
  // so the helper-data leakage reduces exactly to I(X^n; M).
  {
    std::vector<double> xm(x_states * cfg.m_m, 0.0);
    std::vector<Symbol> x_seq(cfg.n);
    for (std::size_t xi = 0; xi < x_states; ++xi) {
      std::size_t rem = xi;
      for (std::size_t t = cfg.n; t-- > 0;) {
        x_seq[t] = static_cast<Symbol>(rem % nx);
        rem /= nx;
      }
      double px = 1.0;
      for (Symbol s : x_seq) px *= bis.px[s];
      if (px <= 0.0) continue;
      for (std::size_t yi = 0; yi < y_states; ++yi) {
        std::size_t yrem = yi;
        double pyx = 1.0;
        for (std::size_t t = cfg.n; t-- > 0;) {
          const Symbol ys = static_cast<Symbol>(yrem % ny);
          yrem /= ny;
          pyx *= bis.enrollment.at(x_seq[t], ys);
          if (pyx == 0.0) break;
        }
        if (pyx <= 0.0) continue;
        const double base = px * pyx;
        for (std::size_t m = 0; m < cfg.m_m; ++m) {
          xm[xi * cfg.m_m + m] += base * pm_given_y[yi * cfg.m_m + m];
        }
      }
    }
    out.privacy_leakage_bits = mi_bits_dense(xm, x_states, cfg.m_m);
  }

  return out;
}

}  // namespace bis
