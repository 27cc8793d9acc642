// Copyright 2026 The kcbs-nv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "kcbs/pulse.hpp"

namespace kcbs {
namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& token, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError(where, "not a number: '" + token + "'");
  }
  if (used != token.size()) throw ConfigError(where, "trailing characters in number '" + token + "'");
  return v;
}

}  // namespace

std::string to_text(const PulseSequence& s) {
  std::string out;
  for (const auto& e : s) {
    if (const auto* p = std::get_if<Pulse>(&e)) {
      out += "PULSE ";
      out += p->channel == Channel::MW1 ? "MW1" : "MW2";
      out += ' ' + fmt12(p->rabi_mhz) + ' ' + fmt12(p->phase_rad) + ' ' + fmt12(p->duration_us) + ' ' +
             fmt12(p->detuning_mhz) + '\n';
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      out += "DELAY " + fmt12(d->duration_us) + '\n';
    } else {
      out += "ECHO " + fmt12(std::get<Echo>(e).tau_us) + '\n';
    }
  }
  return out;
}

PulseSequence parse_sequence(const std::string& text) {
  PulseSequence seq;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0].front() == '#') continue;

    auto expect = [&](std::size_t n) {
      if (tok.size() != n) {
        throw ConfigError(where, tok[0] + " expects " + std::to_string(n - 1) + " fields, got " +
                                     std::to_string(tok.size() - 1));
      }
    };
    try {
      if (tok[0] == "PULSE") {
        expect(6);
        Pulse p;
        if (tok[1] == "MW1") {
          p.channel = Channel::MW1;
        } else if (tok[1] == "MW2") {
          p.channel = Channel::MW2;
        } else {
          throw ConfigError(where, "unknown channel '" + tok[1] + "'");
        }
        p.rabi_mhz = parse_number(tok[2], where);
        p.phase_rad = parse_number(tok[3], where);
        p.duration_us = parse_number(tok[4], where);
        p.detuning_mhz = parse_number(tok[5], where);
        seq.push_back(p);
      } else if (tok[0] == "DELAY") {
        expect(2);
        seq.push_back(Delay{parse_number(tok[1], where)});
      } else if (tok[0] == "ECHO") {
        expect(2);
        seq.push_back(Echo{parse_number(tok[1], where)});
      } else {
        throw ConfigError(where, "unknown element '" + tok[0] + "'");
      }
    } catch (const InvalidInput& e) {
      throw ConfigError(where, e.what());
    }
  }
  return seq;
}

}  // namespace kcbs
