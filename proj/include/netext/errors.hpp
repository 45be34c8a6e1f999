#pragma once

#include <stdexcept>
#include <string>

namespace netext {

// invalid arguments / shape mismatches / out-of-range configuration
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// configured budgets exceeded (e.g. exact symmetrization group too large)
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// a user-supplied map violated its contract (wrong dimension, non-finite output)
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// external plugin broke the line protocol; carries the offending exchange
class PluginError : public std::runtime_error {
 public:
  PluginError(const std::string& what, std::string request, std::string response)
      : std::runtime_error(what), request_(std::move(request)), response_(std::move(response)) {}
  const std::string& request() const { return request_; }
  const std::string& response() const { return response_; }

 private:
  std::string request_;
  std::string response_;
};

}  // namespace netext
