// Reference extension plugin speaking the JSON line protocol on stdin/stdout.
// Usage: plugin_demo <mode> with mode one of:
//   echo       identity per component
//   zero       the zero map
//   natural    M_p per component
//   badjson    replies with garbage (protocol violation)
//   wrongshape drops the last component
//   nonfinite  replies with NaN entries
//   slow       sleeps 30 s before each reply (timeout exercise)

#include <unistd.h>

#include <iostream>
#include <string>

#include <json.hpp>

#include "netext/mazur.hpp"
#include "netext/spaces.hpp"

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "echo";
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    const nlohmann::json req = nlohmann::json::parse(line);
    const std::size_t dim = req.at("component_dim").get<std::size_t>();
    const auto p_list = req.at("p_list").get<std::vector<int>>();
    const auto point = req.at("point").get<std::vector<std::vector<double>>>();

    if (mode == "badjson") {
      std::cout << "not json at all\n" << std::flush;
      continue;
    }
    if (mode == "slow") ::sleep(30);

    nlohmann::json result = nlohmann::json::array();
    for (std::size_t c = 0; c < point.size(); ++c) {
      std::vector<double> out = point[c];
      if (mode == "zero") {
        out.assign(dim, 0.0);
      } else if (mode == "natural") {
        const netext::RealVector v(out);
        out = netext::mazur(v, p_list.at(c)).coords();
      } else if (mode == "nonfinite") {
        out.assign(dim, std::nan(""));
      }
      result.push_back(out);
    }
    if (mode == "wrongshape" && !result.empty()) result.erase(result.size() - 1);

    nlohmann::json resp;
    resp["result"] = result;
    std::cout << resp.dump() << "\n" << std::flush;
  }
  return 0;
}
