#pragma once

// External extension plugins: a child process speaking JSON lines on
// stdin/stdout. One request per call:
//   {"component_dim": n, "p_list": [p0..P], "point": [[..], ..]}
// answered by
//   {"result": [[..], ..]}
// Protocol violations, timeouts and non-finite outputs raise PluginError
// carrying the offending exchange.

#include <string>
#include <vector>

#include "netext/errors.hpp"
#include "netext/spaces.hpp"

namespace netext {

class PluginProcess {
 public:
  // command is split on whitespace; the first token is the executable
  explicit PluginProcess(std::string command, double timeout_seconds = 10.0);
  ~PluginProcess();
  PluginProcess(const PluginProcess&) = delete;
  PluginProcess& operator=(const PluginProcess&) = delete;

  ProductPoint call(const ProductPoint& x);

  const std::string& command() const { return command_; }

 private:
  void launch();
  void shutdown();
  std::string read_line();
  [[noreturn]] void fail(const std::string& what, const std::string& request,
                         const std::string& response);

  std::string command_;
  double timeout_seconds_;
  int to_child_ = -1;
  int from_child_ = -1;
  long pid_ = -1;
  std::string read_buffer_;
};

}  // namespace netext
