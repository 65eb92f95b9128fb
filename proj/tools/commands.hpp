#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wlab::cli {

// Exit codes.
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kOpen = 2;
constexpr int kError = 3;

struct Paths {
  std::string kb;
  std::string diagram;
};
// --kb/--diagram when given, else facts/ under the working directory, else the source tree.
Paths resolve_paths(const std::string& kb, const std::string& diagram);

int query(const Paths& p, const std::string& statement, std::ostream& out);
int derive(const Paths& p, bool list, std::ostream& out);
int facts(const Paths& p, const std::string& filter, bool derived, std::ostream& out);
int hasse(const Paths& p, const std::string& nodes, const std::string& order, const std::string& path, std::ostream& out);
int matrix(const Paths& p, const std::string& nodes, const std::string& orders, bool diff, std::ostream& out);
int run(const std::string& realizer, const std::string& input, std::size_t steps, std::ostream& out);
int verify(const Paths& p, const std::string& what, std::uint64_t seed, const std::string& json_path, bool all_samples,
           std::ostream& out);
int adversary(const std::string& machine, std::size_t budget, std::size_t steps, std::ostream& out);
int list(std::ostream& out);

}  // namespace wlab::cli
