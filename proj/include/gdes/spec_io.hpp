#pragma once

#include <json.hpp>
#include <string>

#include "gdes/permnet.hpp"

namespace gdes {

/**
 * Cipher-spec document:
 *
 *   {"group":{"moduli":[3]}, "t":9, "rounds":2, "key_length":20,
 *    "initial_perm":[...1-based...], "final_swap":true,
 *    "key_schedule":[[...],[...]],
 *    "round_fn":{"type":"sbox","i":2,"j":3,"expansion":[...],"boxes":[[row-major]]}
 *             | {"type":"table","keyed":false,"tables":[[...]]}}
 *
 * or {"preset":"edes"}. Violations raise SpecError carrying a JSON pointer.
 */
CipherSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const CipherSpec& spec);

/// Reads and validates a spec document from disk.
CipherSpec load_spec(const std::string& path);

/// Resolves a named built-in preset ("edes"); throws SpecError otherwise.
CipherSpec preset_spec(const std::string& name);

}  // namespace gdes
