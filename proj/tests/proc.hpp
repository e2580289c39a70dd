#pragma once

// Minimal process + parsing helpers for the end-to-end and acceptance
// binaries: run a command line, capture combined output and exit code.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

struct CmdResult {
    int exit_code = -1;
    std::string output;      // stdout + stderr interleaved
    double elapsed_ms = 0.0;
};

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    out += "'";
    return out;
}

inline CmdResult run_cmd(const std::string& cmd) {
    const std::string full = cmd + " 2>&1";
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) {
        throw std::runtime_error("popen failed for: " + cmd);
    }
    std::string output;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        output.append(buf, n);
    }
    const int status = pclose(pipe);
    const auto end = std::chrono::steady_clock::now();
    CmdResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = std::move(output);
    result.elapsed_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(end - start)
            .count();
    return result;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// First line containing the needle, or empty string.
inline std::string find_line(const std::string& text, const std::string& needle) {
    for (const auto& line : split_lines(text)) {
        if (line.find(needle) != std::string::npos) return line;
    }
    return {};
}

// Last whitespace-separated token of a line parsed as a double.
inline double last_double(const std::string& line) {
    std::istringstream in(line);
    std::string token;
    std::string last;
    while (in >> token) last = token;
    if (last.empty()) {
        throw std::runtime_error("no token to parse in line: " + line);
    }
    char* end = nullptr;
    const double value = std::strtod(last.c_str(), &end);
    if (end == last.c_str()) {
        throw std::runtime_error("not a number: " + last);
    }
    return value;
}

// All doubles that can be parsed from whitespace-separated tokens.
inline std::vector<double> all_doubles(const std::string& line) {
    std::istringstream in(line);
    std::string token;
    std::vector<double> values;
    while (in >> token) {
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() && *end == '\0') values.push_back(v);
    }
    return values;
}

// Tiny check harness: prints one [PASS]/[FAIL] line per named check group.
class CheckSet {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) {
            ++failures_;
            messages_.push_back(what);
        }
    }

    // Close the current group under `name`, printing its verdict.
    bool report(const std::string& name) {
        const bool ok = failures_ == 0;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
        for (const auto& m : messages_) std::printf("       %s\n", m.c_str());
        total_failures_ += failures_;
        checks_ = 0;
        failures_ = 0;
        messages_.clear();
        return ok;
    }

    int total_failures() const { return total_failures_; }

private:
    int checks_ = 0;
    int failures_ = 0;
    int total_failures_ = 0;
    std::vector<std::string> messages_;
};
