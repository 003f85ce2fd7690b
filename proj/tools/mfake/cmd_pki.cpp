// Copyright 2026 The mfake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <random>

#include "commands.hpp"
#include "common.hpp"
#include "mfake/biosim/biosim.hpp"
#include "mfake/io.hpp"
#include "mfake/pki/pki.hpp"
#include "mfake/pki/revocation.hpp"

namespace mfake::cli {

namespace {

std::vector<double> enrolment_template(const TemplateOptions& t, std::size_t n, Rng& rng) {
  if (!t.features.empty()) {
    auto x0 = load_reading(t.features, t.label);
    if (x0.size() != n) throw DimensionError("template", n, x0.size());
    return x0;
  }
  if (!(t.inter_sigma > 0)) throw ParameterError("template sigma must be positive");
  std::normal_distribution<double> dist(0.0, t.inter_sigma);
  std::vector<double> x0(n);
  for (auto& v : x0) v = dist(rng);
  return x0;
}

}  // namespace

int cmd_rc_setup(const GlobalOptions& g, const RcSetupOptions& o) {
  const RcDir dir{o.out};
  if (fs::exists(dir.state()) && !o.force) {
    throw IoError(dir.state().string() + " exists; pass --force to replace it");
  }
  fs::create_directories(dir.root);
  const auto id = group::parse_group_id(o.group);
  const RngSource rngs(g.seed);
  auto rng = rngs.make("rc-setup");
  with_group(id, [&]<class G>() {
    auto rc = pki::rc_setup<G>(o.n, o.d, id, *rng);
    write_file_atomic(dir.params(), pki::encode_params<G>(rc.params()));
    write_file_atomic(dir.state(), pki::encode_rc_state<G>(rc));
    if (!fs::exists(dir.revoked())) pki::RevocationList::load(dir.revoked()).save();
  });
  std::cout << "rc: group=" << group::group_name(id) << " n=" << o.n << " d=" << o.d
            << " dir=" << dir.root.string() << "\n";
  return kExitOk;
}

int cmd_register_user(const GlobalOptions& g, const RegisterUserOptions& o) {
  const RcDir dir{o.rc};
  const Bytes state = read_file(dir.state());
  const RngSource rngs(g.seed);
  return with_group(pki::peek_group(state), [&]<class G>() {
    auto rc = pki::decode_rc_state<G>(state);
    auto tmpl_rng = rngs.make("template");
    const auto x0 = enrolment_template(o.tmpl, rc.params().n(), *tmpl_rng);
    auto rng = rngs.make("register-user");
    const auto device = pki::enroll_user<G>(rc, x0, *rng, o.uid);

    write_file_atomic(o.out, pki::encode_user_record<G>(device));
    const std::string tmpl_out = o.template_out.empty() ? o.out + ".template.csv" : o.template_out;
    const auto csv = biosim::format_features_csv({{std::to_string(device.uid), x0}});
    write_file_atomic(tmpl_out, as_bytes(csv));
    write_file_atomic(dir.state(), pki::encode_rc_state<G>(rc));

    std::cout << "user: uid=" << device.uid << " record=" << o.out << " template=" << tmpl_out
              << "\n";
    return kExitOk;
  });
}

int cmd_register_sp(const GlobalOptions& g, const RegisterSpOptions& o) {
  const RcDir dir{o.rc};
  const Bytes state = read_file(dir.state());
  const RngSource rngs(g.seed);
  return with_group(pki::peek_group(state), [&]<class G>() {
    auto rc = pki::decode_rc_state<G>(state);
    auto rng = rngs.make("register-sp");
    const auto secret = pki::enroll_sp<G>(rc, *rng, o.sid);
    write_file_atomic(o.out, pki::encode_sp_secret<G>(secret));
    write_file_atomic(dir.state(), pki::encode_rc_state<G>(rc));
    std::cout << "sp: sid=" << secret.credential.sid << " record=" << o.out << "\n";
    return kExitOk;
  });
}

int cmd_revoke(const GlobalOptions&, const RevokeOptions& o) {
  if (o.user.empty() == o.com_u.empty()) {
    throw ParameterError("give exactly one of --user or --com-u");
  }
  Bytes com_u;
  if (!o.user.empty()) {
    const Bytes rec = read_file(o.user);
    com_u = with_group(pki::peek_group(rec), [&]<class G>() {
      const auto enc = pki::decode_user_record<G>(rec).credential.com_u.encode();
      return Bytes(enc.begin(), enc.end());
    });
  } else {
    com_u = from_hex(o.com_u);
  }
  const fs::path path = o.list.empty() ? RcDir{o.rc}.revoked() : fs::path(o.list);
  auto list = pki::RevocationList::load(path);
  const std::string hex = to_hex(com_u);
  if (o.check) {
    const bool revoked = list.is_revoked(com_u);
    std::cout << (revoked ? "revoked " : "not revoked ") << hex << "\n";
    return revoked ? kExitOk : kExitRejected;
  }
  const bool added = list.revoke(com_u);
  std::cout << (added ? "revoked " : "already revoked ") << hex << " (" << list.size()
            << " entries in " << path.string() << ")\n";
  return kExitOk;
}

}  // namespace mfake::cli
