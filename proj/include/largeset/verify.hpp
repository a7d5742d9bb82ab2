#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "largeset/avoider.hpp"
#include "largeset/sequence.hpp"

namespace largeset {

struct LargenessReport {
  Rat target;
  Rat min_measure;
  Rat argmin_window;  // left end a of a minimizing [a, a + 1]
  Window window;
  bool pass = false;
  bool approximate = false;  // the avoider depends on an approximant
};

// Exact minimum unit-window measure of the avoider on w, against its target.
LargenessReport verify_largeness(const AvoiderSet& a, const Window& w);

// Error bounds on x and t when they stand in for irrational values.
struct WitnessOptions {
  Rat x_error;
  Rat t_error;
};

struct EscapeWitness {
  Rat x;
  Rat t;
  std::optional<std::uint64_t> witness_index;  // least certified n
  std::uint64_t depth = 0;
  // Indices where the centre value misses S but the error interval does not
  // (only possible with approximate inputs); the first one is kept.
  std::uint64_t uncertified_hits = 0;
  std::optional<std::uint64_t> first_uncertified;

  bool inconclusive() const { return !witness_index; }
};

// Least n <= depth with x a_n + t outside the avoider.
EscapeWitness find_escape_witness(const AvoiderSet& a, const SequenceSpec& s, const Rat& x, const Rat& t,
                                  std::uint64_t depth, const WitnessOptions& opt = {});

struct ScanSummary {
  std::uint64_t cells = 0;
  std::uint64_t found = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t max_witness_index = 0;
};

struct ScanResult {
  std::vector<EscapeWitness> cells;  // x-major: cell (i, j) at i * |t_grid| + j
  ScanSummary summary;
};

ScanResult grid_escape_scan(const AvoiderSet& a, const SequenceSpec& s, std::span<const Rat> x_grid,
                            std::span<const Rat> t_grid, std::uint64_t depth, const WitnessOptions& opt = {});

struct PeriodCertificate {
  BigInt b;
  std::uint64_t modulus = 1;
  std::uint64_t preperiod = 0;  // residues b^n mod modulus indexed from n = 0
  std::uint64_t period = 1;
};

// Minimal preperiod and period of b^n mod modulus (Brent cycle detection).
PeriodCertificate eventual_period(const BigInt& b, std::uint64_t modulus);

enum class PeriodicVerdict { escapes_infinitely_often, escapes_only_in_preperiod, never_escapes };

struct PeriodicityUpgrade {
  PeriodCertificate certificate;
  PeriodicVerdict verdict = PeriodicVerdict::never_escapes;
  std::optional<std::uint64_t> first_escape;
  std::uint64_t scanned = 0;  // n = 1 .. scanned decide every depth
};

// All-depth escape decision for orbits x b^n + t against avoiders whose
// membership depends only on <.>: the residues of b^n modulo the common
// denominator of x and t are eventually periodic, so a finite scan settles
// every depth. Returns nullopt when the hypotheses do not apply.
std::optional<PeriodicityUpgrade> periodicity_upgrade(const AvoiderSet& a, const SequenceSpec& s, const Rat& x,
                                                      const Rat& t);

std::string to_string(PeriodicVerdict v);

nlohmann::json to_json(const LargenessReport& r);
nlohmann::json to_json(const EscapeWitness& w);
nlohmann::json to_json(const ScanResult& r);
nlohmann::json to_json(const PeriodCertificate& c);
nlohmann::json to_json(const PeriodicityUpgrade& u);

}  // namespace largeset
