"""Hand translation of CHANN11 FIRST-SENTENCE, driven through the adapter protocol.

The translated method keeps WS-CNT, WS-TOTAL and WS-ERR-MSG as fields and
everything else as locals.  ``loop_test`` is the while-condition the
translator produced for the PERFORM VARYING ... UNTIL loop.
"""

import json
import sys


class Cics:
    """Stub channel API: each call pops the next queued slot values for its sequence."""

    def __init__(self, mocks):
        self.queues = {m["seqId"]: list(m["fifo"]) for m in mocks}
        self.events = []
        self.counts = {}

    def _call(self, seq_id, args):
        n = self.counts.get(seq_id, 0) + 1
        self.counts[seq_id] = n
        self.events.append({"seqId": seq_id, "occurrence": n,
                            "slotValues": {f"0:{i}": v for i, v in enumerate(args, 1)}})
        queue = self.queues.get(seq_id)
        return queue.pop(0)["slotValues"] if queue else {}

    def put_container(self, name, channel, data, length):
        reply = self._call(1, [name, channel, data, length])
        return int(reply.get("0:0", "0"))

    def link(self, program, channel):
        self._call(2, [program, channel])

    def get_container(self, name, channel):
        return self._call(3, [name, channel]).get("0:0", " " * 30)


def alnum(text, length):
    return text[:length].ljust(length)


def num(value, digits):
    return str(value).rjust(digits, "0")


def first_sentence(fields, cics, loop_test):
    ws_loop_iterations = 3
    limit = 5
    ws_exit_early = " "
    fields["wsTotal"] = 0
    squares = 0
    fields["wsCnt"] = 1
    while loop_test(fields["wsCnt"], ws_loop_iterations, ws_exit_early):
        fields["wsTotal"] += fields["wsCnt"]
        squares += fields["wsCnt"] * fields["wsCnt"]
        if fields["wsTotal"] > limit:
            ws_exit_early = "Y"
        fields["wsCnt"] += 1
    ws_container_name = alnum("TOTALS", 16)
    ws_resp = cics.put_container(ws_container_name, alnum("CHAN11", 16), num(fields["wsTotal"], 5), num(12, 8))
    if ws_resp != 0:
        fields["wsErrMsg"] = "PUT CONTAINER FAILED"
    else:
        cics.link("CHANPRG2", alnum("CHAN11", 16))
        cics.get_container(alnum("REPLY", 16), alnum("CHAN11", 16))


def serve(loop_test):
    request = json.loads(sys.stdin.readline())
    fields = {}
    cics = Cics(request["mocks"])
    first_sentence(fields, cics, loop_test)
    outputs = {"wsCnt": num(fields["wsCnt"], 3), "wsTotal": num(fields["wsTotal"], 5)}
    if "wsErrMsg" in fields:
        outputs["wsErrMsg"] = alnum(fields["wsErrMsg"], 40)
    response = {"programOutputs": outputs, "resourceOutputEvents": cics.events, "status": "Ok"}
    sys.stdout.write(json.dumps(response, sort_keys=True) + "\n")
