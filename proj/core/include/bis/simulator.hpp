// Finite-blocklength implementation of the random-coding achievability
// scheme for discrete models: i.i.d. codebook over the auxiliary alphabet,
// strong-typicality enrollment with a one-time-pad masked chosen key and a
// shared-bit generated key, typicality identification over users and key
// coordinates, error-event classification, and exact or Monte Carlo
// evaluation of all leakage quantities.
//
// Keys and indices are 0-based residues throughout. The mixed-radix key
// split puts the shared component in the high-order digits; this bijection
// is frozen (tests depend on it).
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "bis/models.hpp"

namespace bis {

using Symbol = std::uint32_t;

struct SimConfig {
  std::size_t n = 1;         // blocklength
  std::size_t m_i = 1;       // number of users
  std::size_t m_gamma = 1;   // shared-bit set size |S_Gamma|
  std::size_t m_c_rest = 1;  // |S_{C\Gamma}|
  std::size_t m_g_rest = 1;  // |S_{G\Gamma}|
  std::size_t m_m = 1;       // dummy-message set size |M|
  double epsilon = 0.2;      // typicality slack
  std::uint64_t seed = 0;
  std::size_t trials = 1;

  std::size_t chosen_key_count() const { return m_gamma * m_c_rest; }     // M_C
  std::size_t generated_key_count() const { return m_gamma * m_g_rest; }  // M_G
  std::size_t codebook_size() const {
    return chosen_key_count() * m_g_rest * m_m;
  }
};

// Throws unless all set sizes >= 1, n >= 1 and epsilon > 0.
void validate_config(const SimConfig& cfg);

// Mixed-radix decomposition of a key index: shared = k div radix_rest (the
// high-order digits), rest = k mod radix_rest.
struct KeySplit {
  std::size_t shared = 0;
  std::size_t rest = 0;
  bool operator==(const KeySplit&) const = default;
};

KeySplit split_key(std::size_t k, std::size_t radix_rest, std::size_t m_gamma);
std::size_t join_key(KeySplit ks, std::size_t radix_rest, std::size_t m_gamma);

// One-time-pad masking of the chosen key, addition modulo m_c.
std::size_t mask_key(std::size_t s_c, std::size_t s1, std::size_t m_c);
std::size_t unmask_key(std::size_t masked, std::size_t s1, std::size_t m_c);

struct CodewordIndex {
  std::size_t s1 = 0;  // in [0, M_C)
  std::size_t s2 = 0;  // in [0, m_g_rest)
  std::size_t m = 0;   // in [0, m_m)
  bool operator==(const CodewordIndex&) const = default;
};

// Table of length-n sequences over the auxiliary alphabet, indexed by
// (s1, s2, m).
class Codebook {
 public:
  Codebook(std::size_t n, std::size_t u_size, std::size_t s1_count,
           std::size_t s2_count, std::size_t m_count,
           std::vector<Symbol> symbols);

  std::size_t n() const { return n_; }
  std::size_t u_size() const { return u_size_; }
  std::size_t s1_count() const { return s1_count_; }
  std::size_t s2_count() const { return s2_count_; }
  std::size_t m_count() const { return m_count_; }
  std::size_t size() const { return s1_count_ * s2_count_ * m_count_; }

  std::size_t flat_index(const CodewordIndex& v) const {
    return (v.s1 * s2_count_ + v.s2) * m_count_ + v.m;
  }
  CodewordIndex unflatten(std::size_t flat) const;
  std::span<const Symbol> sequence(const CodewordIndex& v) const {
    return {symbols_.data() + flat_index(v) * n_, n_};
  }

 private:
  std::size_t n_, u_size_, s1_count_, s2_count_, m_count_;
  std::vector<Symbol> symbols_;
};

// M_C * m_g_rest * m_m sequences of n i.i.d. draws from p_u; deterministic
// given the generator state.
Codebook generate_codebook(const SimConfig& cfg, const ProbVector& p_u,
                           std::mt19937_64& gen);

// Strong joint typicality test with per-pair relative deviation epsilon:
// |count(a,u)/n - P(a,u)| <= epsilon * P(a,u) for every pair, and pairs of
// zero probability must not occur. Count bounds are precomputed.
class TypicalityTest {
 public:
  // pair_joint axes: (first sequence alphabet, second sequence alphabet).
  TypicalityTest(const JointTable& pair_joint, double epsilon, std::size_t n);

  bool typical(std::span<const Symbol> a, std::span<const Symbol> u) const;
  std::size_t n() const { return n_; }

 private:
  std::size_t a_size_, u_size_, n_;
  std::vector<std::int64_t> lo_, hi_;  // inclusive per-pair count bounds
};

struct EnrollmentRecord {
  std::size_t helper_m = 0;       // dummy-message index stored in the helper
  std::size_t helper_masked = 0;  // (s_C + s1) mod M_C
  KeySplit generated_key;         // (s_{C1}, s2)
  bool operator==(const EnrollmentRecord&) const = default;
};

struct Enrollment {
  EnrollmentRecord record;
  CodewordIndex chosen;  // index tuple the encoder committed to
};

// Finds all (s1, s2, m) jointly typical with y under P_{YU} and picks one
// uniformly at random. Empty typical set is an encoder failure (event E1),
// returned as a value.
std::optional<Enrollment> enroll(std::span<const Symbol> y, std::size_t s_c,
                                 const Codebook& cb, const SimConfig& cfg,
                                 const TypicalityTest& yu_test,
                                 std::mt19937_64& gen);

struct IdentifyResult {
  std::size_t w = 0;
  std::size_t s_c = 0;
  KeySplit s_g;
  std::size_t s1 = 0, s2 = 0;
};

// Searches users i and coordinates (s1, s2) for codewords u(s1, s2, m(i))
// jointly typical with z under P_{ZU}. Zero or multiple candidate triples
// (i, s1, s2) is a decoder failure, returned as a value.
std::optional<IdentifyResult> identify(
    std::span<const Symbol> z,
    std::span<const std::optional<EnrollmentRecord>> helper_db,
    const Codebook& cb, const SimConfig& cfg, const TypicalityTest& zu_test);

enum class ErrorEvent { none, e1, e2, e3, e4, e5, e6 };

std::string_view event_name(ErrorEvent e);

struct TrialTruth {
  bool encoder_failed = false;
  std::size_t w = 0;
  std::size_t s_c = 0;
  KeySplit s_g;
  CodewordIndex chosen;  // meaningful only when !encoder_failed
};

// Which decoder-side error events are present in a trial.
struct DecodeFlags {
  bool true_not_typical = false;   // E2
  bool wrong_s2_same_s1 = false;   // E3
  bool wrong_s1_same_s2 = false;   // E4
  bool both_wrong_same_m = false;  // E5
  bool other_user_hit = false;     // E6
};

DecodeFlags scan_decode_events(
    std::span<const Symbol> z, const TrialTruth& truth,
    std::span<const std::optional<EnrollmentRecord>> helper_db,
    const Codebook& cb, const SimConfig& cfg, const TypicalityTest& zu_test);

// First-match label in the order E1..E6; none when no event applies (which
// coincides with correct decoding).
ErrorEvent classify_error(const TrialTruth& truth, const DecodeFlags& flags);

struct LeakageValue {
  double bits = 0.0;
  bool exact = false;
};

struct TrialRecord {
  std::size_t trial = 0;
  ErrorEvent event = ErrorEvent::none;
  std::size_t w = 0;
  std::optional<std::size_t> w_hat;
  bool correct = false;
};

struct SimReport {
  std::size_t trials = 0;
  double error_rate = 0.0;
  std::array<std::uint64_t, 6> event_tallies{};  // E1..E6
  LeakageValue key_correlation;                  // I(S_C; S_G)
  LeakageValue secrecy_leakage;                  // I(S_C, S_G; J)
  LeakageValue privacy_leakage;                  // I(X^n; J)
};

// Full campaign: one codebook from substream(seed, 0), one independent
// substream per trial. Leakage fields are plug-in estimates over the
// trial-empirical joint of user 0 (flagged estimated); trials whose user-0
// enrollment failed are excluded from the empirical law.
SimReport run_monte_carlo(const SimConfig& cfg, const DiscreteBIS& bis,
                          const TestChannel& test, unsigned threads = 1,
                          std::vector<TrialRecord>* transcript = nullptr);

// CSV: header trial,event,w,w_hat,correct; w_hat is -1 on decoder failure.
void write_transcript_csv(std::ostream& os,
                          const std::vector<TrialRecord>& records);

struct ExactLeakage {
  double key_correlation_bits = 0.0;   // I(S_C; S_G), log2(m_gamma) exactly
  double secrecy_leakage_bits = 0.0;   // I(S_C, S_G; J)
  double privacy_leakage_bits = 0.0;   // I(X^n; J)
  double otp_masked_leakage_bits = 0.0;  // I(S_C; (S_C + S_1) mod M_C)
};

// Refusal of exact_leakage on configurations whose enumeration exceeds the
// state guard; carries the offending sizes for reporting.
class EnumerationGuardError : public std::runtime_error {
 public:
  EnumerationGuardError(const std::string& msg, double log2_y_codebook,
                        double log2_xy, double log2_secrecy,
                        double log2_x_messages)
      : std::runtime_error(msg),
        log2_y_codebook(log2_y_codebook),
        log2_xy(log2_xy),
        log2_secrecy(log2_secrecy),
        log2_x_messages(log2_x_messages) {}

  double log2_y_codebook;
  double log2_xy;
  double log2_secrecy;
  double log2_x_messages;
};

// Enumerates the exact joint law of (X^n, Y^n, S_C, V) under the fixed
// codebook and the encoder's uniform tie-break, and computes the leakage
// mutual informations from it. A y-sequence with an empty typical set
// contributes its mass through the fixed fallback tuple (0,0,0), keeping the
// law normalized and the chosen tuple independent of S_C; the Monte Carlo
// path reports such trials as encoder failures instead.
ExactLeakage exact_leakage(const SimConfig& cfg, const DiscreteBIS& bis,
                           const TestChannel& test, const Codebook& cb);

}  // namespace bis
