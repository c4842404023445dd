#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tablealg {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  /// Stable machine-readable identifier ("AxiomViolation", "NotNormal", ...).
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

/// A basis axiom failed; carries the axiom id and the witness indices.
class AxiomViolation : public Error {
public:
  AxiomViolation(std::string axiom, std::vector<int> witness,
                 const std::string& detail)
      : Error("AxiomViolation", axiom + " " + detail),
        axiom_(std::move(axiom)), witness_(std::move(witness)) {}

  const std::string& axiom() const { return axiom_; }
  const std::vector<int>& witness() const { return witness_; }

private:
  std::string axiom_;
  std::vector<int> witness_;
};

class NegativeConstant : public Error {
public:
  NegativeConstant(int i, int j, int k, double value)
      : Error("NegativeConstant",
              "lambda[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                  std::to_string(k) + "] = " + std::to_string(value)),
        i_(i), j_(j), k_(k) {}
  int i() const { return i_; }
  int j() const { return j_; }
  int k() const { return k_; }

private:
  int i_, j_, k_;
};

class NoPositiveCharacter : public Error {
public:
  explicit NoPositiveCharacter(const std::string& detail)
      : Error("NoPositiveCharacter", detail) {}
};

class NotClosed : public Error {
public:
  explicit NotClosed(const std::string& detail) : Error("NotClosed", detail) {}
};

class RankCapExceeded : public Error {
public:
  RankCapExceeded(int rank, int cap)
      : Error("RankCapExceeded", "rank " + std::to_string(rank) +
                                     " exceeds cap " + std::to_string(cap)) {}
};

class GammaInconsistent : public Error {
public:
  explicit GammaInconsistent(const std::string& detail)
      : Error("GammaInconsistent", detail) {}
};

class NotNormal : public Error {
public:
  explicit NotNormal(const std::string& detail) : Error("NotNormal", detail) {}
};

class KernelNotNormal : public Error {
public:
  explicit KernelNotNormal(const std::string& detail)
      : Error("KernelNotNormal", detail) {}
};

class InvalidHom : public Error {
public:
  explicit InvalidHom(const std::string& detail)
      : Error("InvalidHom", detail) {}
};

class ImageNotClosed : public Error {
public:
  explicit ImageNotClosed(const std::string& detail)
      : Error("ImageNotClosed", detail) {}
};

class IdentificationInconsistent : public Error {
public:
  explicit IdentificationInconsistent(const std::string& detail)
      : Error("IdentificationInconsistent", detail) {}
};

class ReconstructionMismatch : public Error {
public:
  explicit ReconstructionMismatch(const std::string& detail)
      : Error("ReconstructionMismatch", detail) {}
};

class KernelContainsK : public Error {
public:
  explicit KernelContainsK(const std::string& detail)
      : Error("KernelContainsK", detail) {}
};

class CompletenessFailure : public Error {
public:
  explicit CompletenessFailure(const std::string& detail)
      : Error("CompletenessFailure", detail) {}
};

class SplitFailure : public Error {
public:
  explicit SplitFailure(const std::string& detail)
      : Error("SplitFailure", detail) {}
};

class NonIntegerDegree : public Error {
public:
  explicit NonIntegerDegree(const std::string& detail)
      : Error("NonIntegerDegree", detail) {}
};

class ResidualTooLarge : public Error {
public:
  explicit ResidualTooLarge(const std::string& detail)
      : Error("ResidualTooLarge", detail) {}
};

class ZeroMultiplicity : public Error {
public:
  explicit ZeroMultiplicity(const std::string& detail)
      : Error("ZeroMultiplicity", detail) {}
};

class CountMismatch : public Error {
public:
  explicit CountMismatch(const std::string& detail)
      : Error("CountMismatch", detail) {}
};

class NotStandard : public Error {
public:
  explicit NotStandard(const std::string& detail)
      : Error("NotStandard", detail) {}
};

class FormatError : public Error {
public:
  explicit FormatError(const std::string& detail)
      : Error("FormatError", detail) {}
};

class PartitionInconsistent : public Error {
public:
  explicit PartitionInconsistent(const std::string& detail)
      : Error("PartitionInconsistent", detail) {}
};

class CompatibilityFailure : public Error {
public:
  explicit CompatibilityFailure(const std::string& detail)
      : Error("CompatibilityFailure", detail) {}
};

class NotNormalEpimorphism : public Error {
public:
  explicit NotNormalEpimorphism(const std::string& detail)
      : Error("NotNormalEpimorphism", detail) {}
};

class ResultNotScheme : public Error {
public:
  explicit ResultNotScheme(const std::string& detail)
      : Error("ResultNotScheme", detail) {}
};

}  // namespace tablealg
