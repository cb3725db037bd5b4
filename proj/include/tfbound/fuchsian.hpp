#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tfbound/bounds.hpp"
#include "tfbound/config.hpp"
#include "tfbound/report.hpp"

namespace tfb {

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;  // row-major, det = 1 after normalization
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
inline Mat2 mat_inv(const Mat2& m) { return {m.d, -m.b, -m.c, m.a}; }
inline double mat_tr(const Mat2& m) { return m.a + m.d; }
inline double frob2(const Mat2& m) {
  return m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
}

struct FuchsianGroup {
  std::string label;
  double volume = 0.0;
  std::vector<Mat2> gen;      // normalized to det 1
  std::vector<Mat2> gen_inv;
  std::vector<int> relation;
};

// Validates determinants (|det-1| <= 1e-6 before normalization), rejects
// elliptic generators and identity-only input, and checks the relation
// evaluates to +-I within 1e-8.
FuchsianGroup load_group(const GroupConfig& cfg);

// One group element of the word-length-by-displacement ball.
struct BallElement {
  Mat2 m;
  std::vector<std::int8_t> word;  // signed 1-based generator letters
  int level = 0;                  // reduced word length
};

struct Ball {
  std::vector<BallElement> elems;  // elems[0] = identity
  std::vector<std::size_t> level_sizes;
  bool closed = false;      // some level produced nothing new (fixpoint)
  bool cap_hit = false;     // element_cap truncated the enumeration
  double displacement_cap = 0.0;

  int find(const Mat2& m) const;  // index or -1; matches up to sign and 1e-6

  // internal: sign-normalized quantized hash buckets
  struct Index;
  std::shared_ptr<Index> index;
};

// All freely reduced words of length <= depth whose displacement
// 2 acosh(|tr|/2 ... ) stays under disp_cap (filtered via Frobenius norm:
// ||M||_F^2 = 2 cosh(disp)). Deterministic order.
Ball enumerate_closure(const FuchsianGroup& g, int depth, double disp_cap,
                       std::size_t element_cap);

// Public enumeration op: nonidentity elements with |tr| <= trace_cap.
struct BallSummary {
  std::size_t elements = 0;         // trace-capped, nonidentity
  std::size_t closure_elements = 0; // full ball incl. identity
  std::vector<std::size_t> level_sizes;
  bool closed = false;
  ojson to_json() const;
};
BallSummary enumerate_ball(const FuchsianGroup& g, int max_word_length,
                           double trace_cap, const EnumerationLimits& lim = {});

struct ConjClass {
  int rep = -1;          // ball index of minimal-displacement representative
  double trace = 0.0;    // |tr|
  double length = 0.0;   // 2 acosh(|tr|/2)
  long size = 0;         // ball elements in the class
  int first_level = 0;   // shortest word length seen in the class
  std::string word;      // shortest (then lexicographically least) member word
  bool primitive = true;
  int root_class = -1;   // primitive root when not primitive
  int power = 1;         // this class = root^power
  int inverse_class = -1;
  bool uncertain = false;  // same trace as a neighbor, axis test inconclusive
};

struct SpectrumEntry {
  double length = 0.0;
  long multiplicity = 0;
  bool primitive = true;
  std::string word;  // representative word of one contributing class
};

enum class Completeness { fixpoint, heuristic, incomplete };

struct Spectrum {
  std::string label;
  double volume = 0.0;
  double l_max = 0.0;
  int depth = 0;
  double trace_cap = 0.0;
  bool merged_inverses = false;

  Completeness completeness = Completeness::incomplete;
  double horizon = 0.0;  // lengths <= horizon are certified complete
  double systole = 0.0;
  long kiss = 0;  // oriented class count at the systole
  long uncertain_classes = 0;
  long fallback_merges = 0;

  std::vector<ConjClass> classes;     // sorted by (length, word)
  std::vector<SpectrumEntry> entries; // aggregated by (length, primitive)
  std::vector<std::size_t> level_sizes;

  bool complete() const { return completeness != Completeness::incomplete; }
};

struct SpectrumOptions {
  EnumerationLimits limits;
  bool merge_inverses = false;  // count unoriented classes instead
};

// Enumerates conjugacy classes of translation length <= l_max from words of
// length <= depth. Grouping: union-find over single-letter conjugations, then
// a bounded conjugator search within equal-trace buckets; residual equal-trace
// pairs are compared by axis and flagged uncertain when inconclusive.
Spectrum length_spectrum(const FuchsianGroup& g, double l_max, int depth,
                         const SpectrumOptions& opts = {});

// Closed-interval count with 1e-9 endpoint snap. Throws incomplete_error when
// b exceeds the certified horizon.
long empirical_count(const Spectrum& s, double a, double b, bool primitive_only);

std::string spectrum_csv(const Spectrum& s);  // length,multiplicity,primitive,word
ojson spectrum_json(const Spectrum& s);
ojson spectrum_summary(const Spectrum& s);

// Cross-checks empirical counts against the bound chains at the spectrum's
// volume: kissing bound at the systole, interval and cumulative brackets for
// each L. Requires n = 2 data (Fuchsian input).
ojson validate_bounds(const Spectrum& s, const ExternalConstants& ext,
                      double delta, const std::vector<double>& Ls,
                      double tol = 1e-9);

}  // namespace tfb
