#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IndeterminateRatio : public Error {
public:
  IndeterminateRatio() : Error("indeterminate ratio 0/0 of formal products") {}
};

class DegenerateTriple : public Error {
public:
  DegenerateTriple() : Error("projective triple has more than one zero entry") {}
};

class InadmissibleQuadruple : public Error {
public:
  explicit InadmissibleQuadruple(const std::string& what)
      : Error("inadmissible quadruple " + what) {}
};

/// An extended-value sum like (+inf) + (-inf) was requested.
class IndeterminateSum : public Error {
public:
  explicit IndeterminateSum(const std::string& what = "ill-posed extended sum")
      : Error(what) {}
};

class BranchDisagreement : public Error {
public:
  using Error::Error;
};

class NoGoodPair : public Error {
public:
  NoGoodPair() : Error("no good pair among the candidate points") {}
};

class NoCommonGoodPair : public Error {
public:
  NoCommonGoodPair() : Error("the two sequences share no good pair") {}
};

class NonConvergentTail : public Error {
public:
  using Error::Error;
};

/// Malformed input document; the message names the offending line or field.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace moebius
