// Copyright 2026 The qledger Authors
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

// Umbrella header: the whole library in dependency order.

#pragma once

#include "qledger/errors.hpp"     // error taxonomy
#include "qledger/linalg.hpp"     // dense complex matrices, gates, eigensolver
#include "qledger/qstate.hpp"     // labelled states, evolution, entropy
#include "qledger/transcript.hpp" // protocol steps and replay
#include "qledger/ledger.hpp"     // information/work/entanglement accounting
#include "qledger/measures.hpp"   // entanglement measures
#include "qledger/protocols.hpp"  // teleport, send, measurement, recurrence
#include "qledger/distill.hpp"    // distillation estimates and reports
#include "qledger/serialize.hpp"  // JSON/CSV/table rendering
#include "qledger/scenario.hpp"   // declarative runs and sweeps
