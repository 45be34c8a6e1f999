#include "netext/plugin_process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>

#include "netext/io.hpp"

namespace netext {
namespace {

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> out;
  std::istringstream ss(command);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  if (out.empty()) throw InvalidInput("plugin: empty command");
  return out;
}

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

}  // namespace

PluginProcess::PluginProcess(std::string command, double timeout_seconds)
    : command_(std::move(command)), timeout_seconds_(timeout_seconds) {
  ignore_sigpipe();
  launch();
}

PluginProcess::~PluginProcess() { shutdown(); }

void PluginProcess::launch() {
  const std::vector<std::string> args = split_command(command_);
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0)
    throw std::runtime_error("plugin: pipe() failed");
  const long pid = ::fork();
  if (pid < 0) throw std::runtime_error("plugin: fork() failed");
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
}

void PluginProcess::shutdown() {
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = -1;
  }
  if (from_child_ >= 0) {
    ::close(from_child_);
    from_child_ = -1;
  }
  if (pid_ > 0) {
    int status = 0;
    // give the child a moment to exit on EOF, then force it
    for (int i = 0; i < 50; ++i) {
      const long r = ::waitpid(static_cast<pid_t>(pid_), &status, WNOHANG);
      if (r == pid_ || r < 0) {
        pid_ = -1;
        return;
      }
      ::usleep(2000);
    }
    ::kill(static_cast<pid_t>(pid_), SIGKILL);
    ::waitpid(static_cast<pid_t>(pid_), &status, 0);
    pid_ = -1;
  }
}

void PluginProcess::fail(const std::string& what, const std::string& request,
                         const std::string& response) {
  shutdown();
  throw PluginError("plugin '" + command_ + "': " + what, request, response);
}

std::string PluginProcess::read_line() {
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds_);
  while (true) {
    const std::size_t nl = read_buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      return line;
    }
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) return {};
    const auto remain = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
    struct pollfd pfd{from_child_, POLLIN, 0};
    const int pr = ::poll(&pfd, 1, static_cast<int>(remain.count()) + 1);
    if (pr <= 0) return {};
    char buf[4096];
    const long n = ::read(from_child_, buf, sizeof(buf));
    if (n <= 0) return {};
    read_buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

ProductPoint PluginProcess::call(const ProductPoint& x) {
  io::json req;
  req["component_dim"] = x.component_dim();
  io::json plist = io::json::array();
  for (int p = x.p0(); p <= x.p_max(); ++p) plist.push_back(p);
  req["p_list"] = plist;
  io::json point = io::json::array();
  for (const auto& c : x.components()) point.push_back(io::vector_to_json(c.coords()));
  req["point"] = point;
  const std::string request = req.dump() + "\n";

  if (pid_ <= 0 || to_child_ < 0) fail("process not running", request, "");
  std::size_t written = 0;
  while (written < request.size()) {
    const long n = ::write(to_child_, request.data() + written, request.size() - written);
    if (n <= 0) fail("write failed (" + std::string(std::strerror(errno)) + ")", request, "");
    written += static_cast<std::size_t>(n);
  }

  const std::string line = read_line();
  if (line.empty()) fail("no response within timeout", request, line);

  io::json resp;
  try {
    resp = io::json::parse(line);
  } catch (const std::exception& e) {
    fail(std::string("response is not valid JSON: ") + e.what(), request, line);
  }
  if (!resp.contains("result") || !resp["result"].is_array())
    fail("response missing \"result\" array", request, line);
  const io::json& result = resp["result"];
  if (result.size() != x.components().size())
    fail("result has wrong number of components", request, line);

  std::vector<RealVector> comps;
  comps.reserve(result.size());
  for (const auto& comp : result) {
    if (!comp.is_array() || comp.size() != x.component_dim())
      fail("result component has wrong dimension", request, line);
    std::vector<double> v;
    v.reserve(comp.size());
    for (const auto& e : comp) {
      if (!e.is_number()) fail("result contains a non-numeric entry", request, line);
      const double d = e.get<double>();
      if (!std::isfinite(d)) fail("result contains a non-finite value", request, line);
      v.push_back(d);
    }
    comps.emplace_back(std::move(v));
  }
  return ProductPoint(x.shape(), std::move(comps));
}

}  // namespace netext
