// Thin RAII layer over the C interface. Nothing here reaches past cvdc.h.
#pragma once

#include <cvdc/cvdc.h>

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

namespace cli {

class ApiError : public std::runtime_error {
 public:
  ApiError(cvdc_status status, const std::string& msg, std::size_t column)
      : std::runtime_error(msg), status_(status), column_(column) {}
  cvdc_status status() const { return status_; }
  std::size_t column() const { return column_; }

 private:
  cvdc_status status_;
  std::size_t column_;
};

// Bad command-line input; column is 1-based into `input`, 0 if unknown.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& msg, std::string input = {}, std::size_t column = 0)
      : std::runtime_error(msg), input_(std::move(input)), column_(column) {}
  const std::string& input() const { return input_; }
  std::size_t column() const { return column_; }

 private:
  std::string input_;
  std::size_t column_;
};

inline void check(cvdc_status st) {
  if (st != CVDC_OK) throw ApiError(st, cvdc_last_error(), cvdc_last_error_column());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Channel = std::unique_ptr<cvdc_channel, Deleter<cvdc_channel, cvdc_channel_free>>;
using State = std::unique_ptr<cvdc_state, Deleter<cvdc_state, cvdc_state_free>>;
using Scenario = std::unique_ptr<cvdc_scenario, Deleter<cvdc_scenario, cvdc_scenario_free>>;
using Samples = std::unique_ptr<cvdc_samples, Deleter<cvdc_samples, cvdc_samples_free>>;

inline Channel parse_channel(const std::string& text) {
  cvdc_channel* ch = nullptr;
  check(cvdc_channel_parse(text.c_str(), &ch));
  return Channel(ch);
}

inline State parse_state(const std::string& text) {
  cvdc_state* st = nullptr;
  check(cvdc_state_parse(text.c_str(), &st));
  return State(st);
}

inline Scenario make_scenario(const cvdc_channel* a, const cvdc_channel* b, const cvdc_channel* post,
                              double tau) {
  cvdc_scenario* sc = nullptr;
  check(cvdc_scenario_create(a, b, post, tau, &sc));
  return Scenario(sc);
}

template <class T, class Fn>
std::string spec_string(const T* obj, Fn fn) {
  std::size_t needed = 0;
  check(fn(obj, nullptr, 0, &needed));
  std::string out(needed, '\0');
  check(fn(obj, out.data(), needed + 1, &needed));
  return out;
}

inline std::string canonical_channel(const std::string& text) {
  return spec_string(parse_channel(text).get(), cvdc_channel_spec_string);
}

inline std::string canonical_state(const std::string& text) {
  return spec_string(parse_state(text).get(), cvdc_state_spec_string);
}

inline double classical_capacity(double nbar) {
  double c = 0.0;
  check(cvdc_classical_capacity(nbar, &c));
  return c;
}

}  // namespace cli
