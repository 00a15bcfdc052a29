#pragma once
// Small hand-built inputs shared by the unit tests and the acceptance checks.

#include <map>
#include <string>
#include <utility>

#include "dla/featurespace.hpp"

namespace fixture {

// "The dog barks loudly": the dog form an NP, barks a VP, loudly sits outside
// any chunk. Dependencies: detmod(dog, the), ncsubj(bark, dog), ncmod(bark, loudly).
inline const char* kTagged =
    "The\tthe\tDT\n"
    "dog\tdog\tNN\n"
    "barks\tbark\tVBZ\n"
    "loudly\tloudly\tRB\n";

inline const char* kChunked =
    "The\tthe\tDT\tB-NP\n"
    "dog\tdog\tNN\tI-NP\n"
    "barks\tbark\tVBZ\tB-VP\n"
    "loudly\tloudly\tRB\tO\n";

inline const char* kParsed =
    "The\tthe\tDT\n"
    "dog\tdog\tNN\n"
    "barks\tbark\tVBZ\n"
    "loudly\tloudly\tRB\n"
    "#DEP\tdetmod\t2\t1\n"
    "#DEP\tncsubj\t3\t2\n"
    "#DEP\tncmod\t3\t4\n";

using Events = std::map<std::pair<std::string, std::string>, std::uint64_t>;

// Expected events for the single occurrence of "dog", traced by hand.
inline const Events kTaggedDog = {
    {{"pos[-4]", "<NULL>"}, 1},       {{"pos[-3]", "<NULL>"}, 1},        {{"pos[-2]", "<NULL>"}, 1},
    {{"pos[-1]", "DT"}, 1},           {{"pos[0]", "NN"}, 1},             {{"pos[1]", "VBZ"}, 1},
    {{"pos[2]", "RB"}, 1},            {{"pos[3]", "<NULL>"}, 1},         {{"pos[4]", "<NULL>"}, 1},
    {{"word[-4]", "<NULL>"}, 1},      {{"word[-3]", "<NULL>"}, 1},       {{"word[-2]", "<NULL>"}, 1},
    {{"word[-1]", "the"}, 1},         {{"word[1]", "bark"}, 1},          {{"word[2]", "loudly"}, 1},
    {{"word[3]", "<NULL>"}, 1},       {{"word[4]", "<NULL>"}, 1},
    {{"bitag[-4,-1]", "<NULL>+DT"}, 1}, {{"bitag[-4,0]", "<NULL>+NN"}, 1}, {{"bitag[-3,-2]", "<NULL>+<NULL>"}, 1},
    {{"bitag[-3,-1]", "<NULL>+DT"}, 1}, {{"bitag[-3,0]", "<NULL>+NN"}, 1}, {{"bitag[-2,-1]", "<NULL>+DT"}, 1},
    {{"bitag[-2,0]", "<NULL>+NN"}, 1},  {{"bitag[-1,0]", "DT+NN"}, 1},     {{"bitag[0,1]", "NN+VBZ"}, 1},
    {{"bitag[0,2]", "NN+RB"}, 1},       {{"bitag[0,3]", "NN+<NULL>"}, 1},  {{"bitag[0,4]", "NN+<NULL>"}, 1},
    {{"bitag[1,2]", "VBZ+RB"}, 1},      {{"bitag[1,3]", "VBZ+<NULL>"}, 1}, {{"bitag[1,4]", "VBZ+<NULL>"}, 1},
    {{"bitag[2,3]", "RB+<NULL>"}, 1},
    {{"biword[-3,-2]", "<NULL>+<NULL>"}, 1}, {{"biword[-3,-1]", "<NULL>+the"}, 1},
    {{"biword[-2,-1]", "<NULL>+the"}, 1},    {{"biword[1,2]", "bark+loudly"}, 1},
    {{"biword[1,3]", "bark+<NULL>"}, 1},     {{"biword[2,3]", "loudly+<NULL>"}, 1},
};

inline const Events kChunkedDog = {
    {{"head_mod_word", "the"}, 1},   {{"head_mod_pos", "DT"}, 1},    {{"head_mod_wordpos", "the/DT"}, 1},
    {{"pos[-3]", "<NULL>"}, 1},      {{"pos[-2]", "<NULL>"}, 1},     {{"pos[-1]", "DT"}, 1},
    {{"pos[0]", "NN"}, 1},           {{"pos[1]", "VBZ"}, 1},         {{"pos[2]", "RB"}, 1},
    {{"pos[3]", "<NULL>"}, 1},       {{"word[-3]", "<NULL>"}, 1},    {{"word[-2]", "<NULL>"}, 1},
    {{"word[-1]", "the"}, 1},        {{"word[1]", "bark"}, 1},       {{"word[2]", "loudly"}, 1},
    {{"word[3]", "<NULL>"}, 1},      {{"chunk[-4]", "<NULL>"}, 1},   {{"chunk[-3]", "<NULL>"}, 1},
    {{"chunk[-2]", "<NULL>"}, 1},    {{"chunk[-1]", "<NULL>"}, 1},   {{"chunk[0]", "NP"}, 1},
    {{"chunk[1]", "VP"}, 1},         {{"chunk[2]", "O"}, 1},         {{"chunk[3]", "<NULL>"}, 1},
    {{"chunk[4]", "<NULL>"}, 1},     {{"chunkhead[-3]", "<NULL>"}, 1}, {{"chunkhead[-2]", "<NULL>"}, 1},
    {{"chunkhead[-1]", "<NULL>"}, 1}, {{"chunkhead[1]", "bark"}, 1},  {{"chunkhead[2]", "loudly"}, 1},
    {{"chunkhead[3]", "<NULL>"}, 1}, {{"bichunk[-2,-1]", "<NULL>+<NULL>"}, 1}, {{"bichunk[-2,0]", "<NULL>+NP"}, 1},
    {{"bichunk[-1,0]", "<NULL>+NP"}, 1}, {{"bichunk[0,1]", "NP+VP"}, 1}, {{"bichunk[0,2]", "NP+O"}, 1},
    {{"bichunk[1,2]", "VP+O"}, 1},
};

inline const Events kParsedDog = {
    {{"pos[-2]", "<NULL>"}, 1}, {{"pos[-1]", "DT"}, 1},      {{"pos[0]", "NN"}, 1},
    {{"pos[1]", "VBZ"}, 1},     {{"pos[2]", "RB"}, 1},       {{"word[-2]", "<NULL>"}, 1},
    {{"word[-1]", "the"}, 1},   {{"word[1]", "bark"}, 1},    {{"word[2]", "loudly"}, 1},
    {{"head[ncsubj]", "bark"}, 1}, {{"mod[detmod]", "the"}, 1},
};

inline Events events_of(const dla::EventCounts& ev, const std::string& lexeme) {
  Events out;
  auto it = ev.by_lexeme().find(lexeme);
  if (it == ev.by_lexeme().end()) return out;
  for (const auto& [k, n] : it->second) out[{k.ftype, k.instance}] = n;
  return out;
}

}  // namespace fixture
