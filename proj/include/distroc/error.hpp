#pragma once

#include <stdexcept>
#include <string>

namespace distroc {

// Base of every error the library throws. `stage()` is filled in by the
// distributed pipeline when an error escapes one of its steps.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}

  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  std::string stage_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// AUC of exactly 0 or 1: the logit-scale interval is undefined.
class DegenerateAucError : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

class SingularInformationError : public Error {
 public:
  SingularInformationError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

// Raised by recommended_params when the sensitivity is outside the
// calibrated range.
class CautionError : public Error {
 public:
  using Error::Error;
};

// A disclosure-control refusal: an aggregate over fewer than q records
// was requested.
class PrivacyRefusal : public Error {
 public:
  PrivacyRefusal(std::string stage, std::string site_id, long long n, long long q)
      : Error("privacy refusal at stage '" + stage + "'" +
              (site_id.empty() ? std::string() : " on site '" + site_id + "'") +
              ": " + std::to_string(n) + " < q = " + std::to_string(q)),
        refusal_stage_(std::move(stage)),
        site_id_(std::move(site_id)),
        n_(n),
        q_(q) {}

  const std::string& refusal_stage() const noexcept { return refusal_stage_; }
  const std::string& site_id() const noexcept { return site_id_; }
  long long n() const noexcept { return n_; }
  long long q() const noexcept { return q_; }

 private:
  std::string refusal_stage_;
  std::string site_id_;
  long long n_;
  long long q_;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace distroc
