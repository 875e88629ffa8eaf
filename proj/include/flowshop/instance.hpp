#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flowshop {

using Time = std::int64_t;

// Input stream violated its format. Line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A size guard was exceeded (exhaustive enumeration, family listing, ...).
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Job ordering. Indices are 0-based internally; the CLI speaks 1-based.
struct Permutation {
  std::vector<int> order;

  static Permutation identity(int jobs) {
    Permutation p;
    p.order.resize(static_cast<std::size_t>(jobs));
    std::iota(p.order.begin(), p.order.end(), 0);
    return p;
  }

  int size() const { return static_cast<int>(order.size()); }

  // True iff this is a bijection on {0..jobs-1}.
  bool is_valid(int jobs) const {
    if (size() != jobs) return false;
    std::vector<char> seen(static_cast<std::size_t>(jobs), 0);
    for (int j : order) {
      if (j < 0 || j >= jobs || seen[static_cast<std::size_t>(j)]) return false;
      seen[static_cast<std::size_t>(j)] = 1;
    }
    return true;
  }

  bool operator==(const Permutation&) const = default;
};

// Metadata from the data line of a Taillard-format block.
struct TaillardHeader {
  long long seed = 0;
  Time upper_bound = 0;
  Time lower_bound = 0;
};

// An M x N grid of processing times, machine-major: times[i][j] = t(i,j).
struct Instance {
  std::string name;
  int machines = 0;  // M
  int jobs = 0;      // N
  std::vector<std::vector<Time>> times;
  std::optional<TaillardHeader> taillard;

  Time t(int machine, int job) const {
    return times[static_cast<std::size_t>(machine)][static_cast<std::size_t>(job)];
  }

  bool same_grid(const Instance& other) const {
    return machines == other.machines && jobs == other.jobs && times == other.times;
  }
};

struct GenSpec {
  int jobs = 1;
  int machines = 1;
  Time min_time = 0;
  Time max_time = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Unbiased draw in [0, range); rejection keeps the mapping exact so the
// same seed reproduces the same instance on any platform.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

struct Token {
  std::string text;
  int line = 0;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  int cur_line = 1;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        out.push_back({cur, cur_line});
        cur.clear();
      }
      if (ch == '\n') ++line;
    } else {
      if (cur.empty()) cur_line = line;
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back({cur, cur_line});
  return out;
}

inline bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

inline std::string lower(std::string_view in) {
  std::string out(in);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Cursor over a token stream with format-error reporting.
struct TokenCursor {
  const std::vector<Token>& toks;
  std::size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  int last_line() const { return toks.empty() ? 1 : toks.back().line; }

  long long next_int(const char* what) {
    if (done()) throw ParseError(last_line(), std::string("unexpected end of input, expected ") + what);
    long long v = 0;
    if (!parse_ll(toks[pos].text, v))
      throw ParseError(toks[pos].line, "non-numeric token '" + toks[pos].text + "', expected " + what);
    ++pos;
    return v;
  }
};

}  // namespace detail

inline Instance generate(const GenSpec& spec) {
  if (spec.jobs < 1 || spec.machines < 1)
    throw std::invalid_argument("generate: jobs and machines must be >= 1");
  if (spec.min_time < 0) throw std::invalid_argument("generate: min time must be >= 0");
  if (spec.min_time > spec.max_time)
    throw std::invalid_argument("generate: min time exceeds max time");

  std::mt19937_64 rng(spec.seed);
  const std::uint64_t range =
      static_cast<std::uint64_t>(spec.max_time - spec.min_time) + 1;
  Instance inst;
  inst.name = "rand_n" + std::to_string(spec.jobs) + "_m" + std::to_string(spec.machines) +
              "_s" + std::to_string(spec.seed);
  inst.machines = spec.machines;
  inst.jobs = spec.jobs;
  inst.times.assign(static_cast<std::size_t>(spec.machines),
                    std::vector<Time>(static_cast<std::size_t>(spec.jobs), 0));
  for (auto& row : inst.times)
    for (auto& v : row)
      v = spec.min_time + static_cast<Time>(detail::bounded_draw(rng, range));
  return inst;
}

// Returns every invariant violation; empty result means the instance is valid.
inline std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.machines < 1) out.push_back("machine count must be >= 1");
  if (inst.jobs < 1) out.push_back("job count must be >= 1");
  if (static_cast<int>(inst.times.size()) != inst.machines)
    out.push_back("grid has " + std::to_string(inst.times.size()) + " rows, expected " +
                  std::to_string(inst.machines));
  Time max_time = 0;
  for (std::size_t i = 0; i < inst.times.size(); ++i) {
    const auto& row = inst.times[i];
    if (static_cast<int>(row.size()) != inst.jobs) {
      out.push_back("row length mismatch at row " + std::to_string(i + 1) + " (" +
                    std::to_string(row.size()) + " entries, expected " +
                    std::to_string(inst.jobs) + ")");
      continue;
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0)
        out.push_back("negative time at (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ")");
      else
        max_time = std::max(max_time, row[j]);
    }
  }
  // Accumulating all NM entries must stay inside a signed 64-bit value.
  if (inst.machines >= 1 && inst.jobs >= 1 && max_time > 0) {
    const unsigned __int128 total = static_cast<unsigned __int128>(max_time) *
                                    static_cast<unsigned __int128>(inst.machines) *
                                    static_cast<unsigned __int128>(inst.jobs);
    if (total > static_cast<unsigned __int128>(std::numeric_limits<Time>::max()))
      out.push_back("times too large: summing NM entries can overflow a 64-bit accumulator");
  }
  return out;
}

enum class Format { Plain, Taillard, Vrf };

inline std::optional<Format> format_from_name(std::string_view name) {
  const std::string n = detail::lower(name);
  if (n == "plain") return Format::Plain;
  if (n == "taillard") return Format::Taillard;
  if (n == "vrf") return Format::Vrf;
  return std::nullopt;
}

inline const char* format_name(Format f) {
  switch (f) {
    case Format::Plain: return "plain";
    case Format::Taillard: return "taillard";
    case Format::Vrf: return "vrf";
  }
  return "?";
}

namespace detail {

inline void check_dims(long long n, long long m, int line) {
  if (n < 1 || m < 1) throw ParseError(line, "malformed header: jobs and machines must be >= 1");
  if (n > 1'000'000 || m > 1'000'000) throw ParseError(line, "malformed header: dimensions out of range");
}

inline Time read_time(TokenCursor& cur, int machine, int job) {
  const int line = cur.done() ? cur.last_line() : cur.toks[cur.pos].line;
  const long long v = cur.next_int("a processing time");
  if (v < 0)
    throw ParseError(line, "negative time at (" + std::to_string(machine + 1) + "," +
                               std::to_string(job + 1) + ")");
  return static_cast<Time>(v);
}

inline std::vector<Instance> parse_plain(std::string_view content, std::string_view name_hint) {
  const auto toks = tokenize(content);
  TokenCursor cur{toks};
  const int header_line = toks.empty() ? 1 : toks.front().line;
  const long long n = cur.next_int("job count");
  const long long m = cur.next_int("machine count");
  check_dims(n, m, header_line);
  Instance inst;
  inst.name = std::string(name_hint) + "#1";
  inst.jobs = static_cast<int>(n);
  inst.machines = static_cast<int>(m);
  inst.times.assign(static_cast<std::size_t>(m), std::vector<Time>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < inst.machines; ++i)
    for (int j = 0; j < inst.jobs; ++j) inst.times[i][j] = read_time(cur, i, j);
  if (!cur.done())
    throw ParseError(cur.toks[cur.pos].line, "row/column count mismatch: trailing data after " +
                                                 std::to_string(m) + "x" + std::to_string(n) +
                                                 " grid");
  return {inst};
}

inline std::vector<Instance> parse_vrf(std::string_view content, std::string_view name_hint) {
  const auto toks = tokenize(content);
  TokenCursor cur{toks};
  const int header_line = toks.empty() ? 1 : toks.front().line;
  const long long n = cur.next_int("job count");
  const long long m = cur.next_int("machine count");
  check_dims(n, m, header_line);
  Instance inst;
  inst.name = std::string(name_hint) + "#1";
  inst.jobs = static_cast<int>(n);
  inst.machines = static_cast<int>(m);
  inst.times.assign(static_cast<std::size_t>(m), std::vector<Time>(static_cast<std::size_t>(n), 0));
  // Job-major rows of (machine index, time) pairs; indices 0-based ascending.
  for (int j = 0; j < inst.jobs; ++j) {
    for (int k = 0; k < inst.machines; ++k) {
      const int line = cur.done() ? cur.last_line() : cur.toks[cur.pos].line;
      const long long idx = cur.next_int("a machine index");
      if (idx != k)
        throw ParseError(line, "machine index " + std::to_string(idx) + " out of order in job row " +
                                   std::to_string(j + 1) + ", expected " + std::to_string(k));
      inst.times[k][j] = read_time(cur, k, j);
    }
  }
  if (!cur.done())
    throw ParseError(cur.toks[cur.pos].line, "row/column count mismatch: trailing data after " +
                                                 std::to_string(n) + " job rows");
  return {inst};
}

inline std::vector<std::string> split_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : content) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  lines.push_back(cur);
  return lines;
}

inline bool blank_line(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

inline std::vector<Instance> parse_taillard(std::string_view content, std::string_view name_hint) {
  const auto lines = split_lines(content);
  std::vector<Instance> out;
  std::size_t li = 0;
  const auto skip_blank = [&] {
    while (li < lines.size() && blank_line(lines[li])) ++li;
  };
  skip_blank();
  if (li >= lines.size()) throw ParseError(1, "malformed header: empty taillard stream");
  while (true) {
    skip_blank();
    if (li >= lines.size()) break;
    if (lower(lines[li]).find("number of jobs") == std::string::npos)
      throw ParseError(static_cast<int>(li + 1),
                       "malformed header: expected a line containing 'number of jobs'");
    ++li;
    skip_blank();
    if (li >= lines.size())
      throw ParseError(static_cast<int>(li), "unexpected end of input, expected 'N M seed UB LB'");
    const auto data_toks = tokenize(lines[li]);
    if (data_toks.size() != 5)
      throw ParseError(static_cast<int>(li + 1),
                       "malformed header: expected 5 integers 'N M seed UB LB'");
    long long vals[5];
    for (int k = 0; k < 5; ++k)
      if (!parse_ll(data_toks[static_cast<std::size_t>(k)].text, vals[k]))
        throw ParseError(static_cast<int>(li + 1),
                         "non-numeric token '" + data_toks[static_cast<std::size_t>(k)].text +
                             "' in data line");
    check_dims(vals[0], vals[1], static_cast<int>(li + 1));
    ++li;
    skip_blank();
    if (li >= lines.size() || lower(lines[li]).find("processing times") == std::string::npos)
      throw ParseError(static_cast<int>(li + 1),
                       "malformed header: expected a line containing 'processing times'");
    ++li;

    Instance inst;
    inst.jobs = static_cast<int>(vals[0]);
    inst.machines = static_cast<int>(vals[1]);
    inst.taillard = TaillardHeader{vals[2], static_cast<Time>(vals[3]), static_cast<Time>(vals[4])};
    inst.name = std::string(name_hint) + "#" + std::to_string(out.size() + 1);
    inst.times.assign(static_cast<std::size_t>(inst.machines),
                      std::vector<Time>(static_cast<std::size_t>(inst.jobs), 0));
    const std::size_t need = static_cast<std::size_t>(inst.machines) *
                             static_cast<std::size_t>(inst.jobs);
    std::size_t got = 0;
    while (got < need) {
      skip_blank();
      if (li >= lines.size())
        throw ParseError(static_cast<int>(li),
                         "row/column count mismatch: expected " + std::to_string(need) +
                             " times, found " + std::to_string(got));
      const auto row_toks = tokenize(lines[li]);
      for (const auto& tok : row_toks) {
        if (got >= need)
          throw ParseError(static_cast<int>(li + 1),
                           "row/column count mismatch: trailing data after " +
                               std::to_string(need) + " times");
        long long v = 0;
        if (!parse_ll(tok.text, v))
          throw ParseError(static_cast<int>(li + 1), "non-numeric token '" + tok.text + "'");
        const int i = static_cast<int>(got / static_cast<std::size_t>(inst.jobs));
        const int j = static_cast<int>(got % static_cast<std::size_t>(inst.jobs));
        if (v < 0)
          throw ParseError(static_cast<int>(li + 1), "negative time at (" + std::to_string(i + 1) +
                                                         "," + std::to_string(j + 1) + ")");
        inst.times[i][j] = static_cast<Time>(v);
        ++got;
      }
      ++li;
    }
    out.push_back(std::move(inst));
    skip_blank();
    if (li >= lines.size()) break;
  }
  if (out.empty()) throw ParseError(1, "malformed header: no instance blocks found");
  return out;
}

}  // namespace detail

// Parses one stream into its instances. name_hint is the file stem used to
// synthesize instance names "<hint>#<k>" (the formats carry no names).
inline std::vector<Instance> parse_instances(std::string_view content, Format format,
                                             std::string_view name_hint) {
  switch (format) {
    case Format::Plain: return detail::parse_plain(content, name_hint);
    case Format::Vrf: return detail::parse_vrf(content, name_hint);
    case Format::Taillard: return detail::parse_taillard(content, name_hint);
  }
  throw std::invalid_argument("unknown format");
}

// Content sniffing: a 'number of jobs' prose line marks taillard; otherwise
// the total token count (2 + NM for plain, 2 + 2NM for vrf) decides.
inline Format detect_format(std::string_view content) {
  const auto lines = detail::split_lines(content);
  for (std::size_t i = 0; i < lines.size() && i < 40; ++i)
    if (detail::lower(lines[i]).find("number of jobs") != std::string::npos)
      return Format::Taillard;
  const auto toks = detail::tokenize(content);
  detail::TokenCursor cur{toks};
  const long long n = cur.next_int("job count");
  const long long m = cur.next_int("machine count");
  detail::check_dims(n, m, toks.empty() ? 1 : toks.front().line);
  const unsigned long long cells =
      static_cast<unsigned long long>(n) * static_cast<unsigned long long>(m);
  const unsigned long long rest = toks.size() - 2;
  if (rest == cells) return Format::Plain;
  if (rest == 2 * cells) return Format::Vrf;
  throw ParseError(1, "cannot detect format: token count matches neither plain nor vrf layout");
}

inline std::string serialize(const Instance& inst, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Plain: {
      os << inst.jobs << ' ' << inst.machines << '\n';
      for (const auto& row : inst.times) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
      }
      break;
    }
    case Format::Vrf: {
      os << inst.jobs << ' ' << inst.machines << '\n';
      for (int j = 0; j < inst.jobs; ++j) {
        for (int i = 0; i < inst.machines; ++i)
          os << (i ? " " : "") << i << ' ' << inst.t(i, j);
        os << '\n';
      }
      break;
    }
    case Format::Taillard: {
      const TaillardHeader hdr = inst.taillard.value_or(TaillardHeader{});
      os << "number of jobs, number of machines, initial seed, upper bound and lower bound :\n";
      os << ' ' << inst.jobs << ' ' << inst.machines << ' ' << hdr.seed << ' ' << hdr.upper_bound
         << ' ' << hdr.lower_bound << '\n';
      os << "processing times :\n";
      for (const auto& row : inst.times) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
      }
      break;
    }
  }
  return os.str();
}

inline std::string path_stem(const std::filesystem::path& p) { return p.stem().string(); }

// Reads and parses one instance file; format is sniffed unless forced.
inline std::vector<Instance> load_instances(const std::filesystem::path& path,
                                            std::optional<Format> forced = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  const Format fmt = forced ? *forced : detect_format(content);
  return parse_instances(content, fmt, path_stem(path));
}

}  // namespace flowshop
