// Copyright 2026 The sigbsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef SIGBSG_SIGBSG_HPP_
#define SIGBSG_SIGBSG_HPP_

#include "sigbsg/distribution.hpp"
#include "sigbsg/equilibrium.hpp"
#include "sigbsg/errors.hpp"
#include "sigbsg/game.hpp"
#include "sigbsg/game_io.hpp"
#include "sigbsg/geometry.hpp"
#include "sigbsg/io.hpp"
#include "sigbsg/learning.hpp"
#include "sigbsg/lp.hpp"
#include "sigbsg/signaling.hpp"

#endif  // SIGBSG_SIGBSG_HPP_
