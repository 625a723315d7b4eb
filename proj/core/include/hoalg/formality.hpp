#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoalg/enveloping.hpp"
#include "hoalg/homotopy.hpp"
#include "hoalg/opcohomology.hpp"

namespace hoalg {

/// Context of the operadic complex of a minimal structure (built from b2).
/// Ass/Com use normalized cochains when the space has a unit and every
/// b_k, k >= 3, vanishes on it.
OperadicContext structure_context(const PInftyStructure& s, ComplexKind kind, bool filtered = false);
ComplexKind default_kind(Species s);

// ---------------------------------------------------------------------------
// Degree-window certificate

struct CertificateReport {
  bool certified = false;
  int k_max = -1;                 // last arity that can carry a nonzero b_k; -1 if unbounded
  std::map<int, Scalar> slices;   // k0 < k <= k_max -> dim of the slice housing b_k
  std::string reason;
};

/// Slices (arity k, bar degree 1) from `in` to `out`; symmetric counts graded
/// symmetric coordinates (suspended degrees).
CertificateReport degree_bound_report(const GradedSpace& in, const GradedSpace& out, bool symmetric, int k0);
/// Unit removed from the inputs for Ass/Com. Never certifies when the degree
/// window stays open.
CertificateReport degree_bound_report(const SpacePtr& H, Species species, int k0);
bool degree_bound_certificate(const SpacePtr& H, Species species, int k0);

// ---------------------------------------------------------------------------
// Obstruction sequence

enum class ObstructionStatus { all_vanish, nonzero, certified_formal };
std::string status_name(ObstructionStatus s);

struct ObstructionEntry {
  int k = 0;
  Multilinear cochain;  // b_k after the earlier gauges, on the context inputs
  bool cocycle = false;
  bool vanishes = false;
  std::optional<Multilinear> witness;  // ∂ witness = cochain
};

struct ObstructionReport {
  Species species = Species::Ass;
  ComplexKind kind = ComplexKind::hochschild;
  int N = 0;
  bool normalized = false;
  std::vector<ObstructionEntry> entries;
  ObstructionStatus status = ObstructionStatus::all_vanish;
  int nonzero_k = 0;
  PInftyStructure gauged;  // structure after the last gauge
  CertificateReport certificate;
};

/// Repeatedly: lowest nonzero b_k (3 <= k <= N), cocycle check, coboundary
/// query, gauge it away. Throws InputError if the structure is not minimal or
/// fails its relations, InvariantViolation if an obstruction is not a cocycle
/// or a gauge leaves a lower b_j behind, TruncationOverflow if a filtered
/// context meets an obstruction that raises weight.
ObstructionReport obstruction_sequence(const PInftyStructure& minimal, int N,
                                       std::optional<ComplexKind> kind = std::nullopt, bool filtered = false);

// ---------------------------------------------------------------------------
// Verdicts and the two comparisons

enum class Verdict { formal_to_stage, certified_formal, non_formal, partial };
std::string verdict_name(Verdict v);

struct FormalityVerdict {
  std::string category;
  Verdict verdict = Verdict::partial;
  int k = 0;   // first nonzero stage for non_formal; the stage bound otherwise
  std::string provenance;
  std::string reason;  // partial results only

  bool operator==(const FormalityVerdict& o) const { return verdict == o.verdict && k == o.k; }
};
FormalityVerdict verdict_of(const ObstructionReport& r, const std::string& category, const std::string& provenance);

struct StageComparison {
  int k = 0;
  bool harrison_vanishes = false;
  bool hochschild_vanishes = false;
  bool witness_transferred = false;  // Hochschild witness turned into a Harrison one
};

struct ComAssReport {
  ObstructionReport harrison, hochschild;
  std::vector<StageComparison> stages;
  FormalityVerdict harrison_verdict, hochschild_verdict;
  bool agree = false;
};

/// One C∞ transfer; Harrison and Hochschild sequences on it. Every Harrison
/// obstruction is also tested in Hochschild cohomology. Throws
/// InvariantViolation when the two sides disagree.
ComAssReport compare_com_vs_ass(const DgAlgebra& cdga, int N);

struct LieAssReport {
  ObstructionReport ce, hochschild;
  FormalityVerdict ce_verdict, hochschild_verdict;
  bool partial = false;
  std::string partial_reason;
  int compared_k = 0;  // first stage with a possibly nonzero class (0: none)
  bool classes_equal = false;      // Alt*[m_k] = j*[l_k] in H_CE(H(L), UH(L)^ad)
  std::optional<Multilinear> class_witness;
  bool j_injective = false;        // on the slice of compared_k
  bool alt_is_cocycle = false;     // Alt(m_k) is a CE cocycle
  QuillenReport quillen;
  bool agree = false;
};

/// Pipeline A: L∞ transfer of L and the CE sequence. Pipeline B: the envelope
/// truncated at word length W, its A∞ transfer (weight-homogeneous
/// contraction) and the filtered Hochschild sequence. Insufficient truncation
/// gives a partial report; a genuine disagreement throws InvariantViolation.
LieAssReport compare_lie_vs_ass(const DgAlgebra& L, int N, int W);

}  // namespace hoalg
