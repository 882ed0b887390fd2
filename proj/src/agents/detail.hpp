#pragma once

#include <string>

#include "sarc/agents/agent.hpp"

namespace sarc::agents::detail {

void assign_network(const NetworkMap& nets, const std::string& name, Mlp& slot);

}  // namespace sarc::agents::detail
