#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rde::mtl {

/// Finite discrete-time trace. Each atom carries, per time index, a boolean
/// truth flag and a signed distance whose sign agrees with the flag
/// (positive iff the atom holds; infinities are allowed).
class Trace {
 public:
  explicit Trace(std::size_t length) : length_(length) {
    if (length == 0) throw std::invalid_argument("trace length must be >= 1");
  }

  std::size_t length() const { return length_; }

  /// Sets the atom's sample at time t; the truth flag is distance > 0.
  void set(const std::string& atom, std::size_t t, double distance) {
    set(atom, t, distance, distance > 0.0);
  }

  /// Sets flag and distance explicitly; they must agree in sign
  /// (holds requires distance > 0, !holds requires distance <= 0).
  void set(const std::string& atom, std::size_t t, double distance,
           bool holds) {
    check_time(t);
    if (holds != (distance > 0.0)) {
      throw std::invalid_argument("atom '" + atom +
                                  "': truth flag disagrees with distance sign");
    }
    Samples& s = samples(atom);
    s.distance[t] = distance;
    s.holds[t] = holds;
    s.present[t] = true;
  }

  bool holds(const std::string& atom, std::size_t t) const {
    return find(atom, t).holds[t];
  }

  double distance(const std::string& atom, std::size_t t) const {
    return find(atom, t).distance[t];
  }

 private:
  struct Samples {
    std::vector<double> distance;
    std::vector<std::uint8_t> holds;
    std::vector<std::uint8_t> present;
  };

  void check_time(std::size_t t) const {
    if (t >= length_) throw std::out_of_range("trace time index out of range");
  }

  Samples& samples(const std::string& atom) {
    auto [it, inserted] = atoms_.try_emplace(atom);
    if (inserted) {
      it->second.distance.resize(length_, 0.0);
      it->second.holds.resize(length_, 0);
      it->second.present.resize(length_, 0);
    }
    return it->second;
  }

  const Samples& find(const std::string& atom, std::size_t t) const {
    check_time(t);
    auto it = atoms_.find(atom);
    if (it == atoms_.end() || !it->second.present[t]) {
      throw std::out_of_range("atom '" + atom + "' has no sample at t=" +
                              std::to_string(t));
    }
    return it->second;
  }

  std::size_t length_;
  std::map<std::string, Samples> atoms_;
};

}  // namespace rde::mtl
