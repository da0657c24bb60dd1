// Validation tests for CHANN11 paragraph FIRST-SENTENCE
// Target: Chann11.firstSentence
// Mocks use the OrderedStubs facade: each thenReturn call queues one value set,
// consumed by successive invocations of the matched call sequence.
import org.junit.jupiter.api.Test;

import static org.junit.jupiter.api.Assertions.assertEquals;

public class Chann11_FIRST_SENTENCE_Test {

    @Test
    void t01() {
        Chann11 target = new Chann11();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        // mocks
        stubs.sequence(1).thenReturn("0:0", "00000001");
        // mock note: sequence 2 matches no source call
        // mock note: sequence 3 matches no source call
        // invocation
        target.firstSentence();
        // assertions
        // @assert program WS-CNT wsCnt "004"
        assertEquals("004", OrderedStubs.text(target.wsCnt));
        // @assert program WS-ERR-MSG wsErrMsg "PUT CONTAINER FAILED                    "
        assertEquals("PUT CONTAINER FAILED                    ", OrderedStubs.text(target.wsErrMsg));
        // @assert program WS-TOTAL wsTotal "00006"
        assertEquals("00006", OrderedStubs.text(target.wsTotal));
        // @assert resource 1 1 WS-CONTAINER-NAME 1/0:1 "TOTALS          "
        assertEquals("TOTALS          ", stubs.sequence(1).captured(1, "0:1"));
        // @assert resource 1 1 WS-TOTAL 1/0:3 "00006"
        assertEquals("00006", stubs.sequence(1).captured(1, "0:3"));
        // @skip WS-AUDIT-TRAN UnmappedVar
        // @skip WS-AVERAGE UnmappedVar
        // @skip WS-CHANNEL-NAME UnmappedVar
        // @skip WS-CONTAINER-LEN UnmappedVar
        // @skip WS-CONTAINER-NAME LocalInTarget
        // @skip WS-ERR-STAGE UnmappedVar
        // @skip WS-EXIT-EARLY LocalInTarget
        // @skip WS-LAST-SLOT LocalInTarget
        // @skip WS-LIMIT LocalInTarget
        // @skip WS-LOOP-ITERATIONS LocalInTarget
        // @skip WS-PROGRAM-NAME UnmappedVar
        // @skip WS-REPLY-CONTAINER UnmappedVar
        // @skip WS-REPLY-LEN UnmappedVar
        // @skip WS-RETURN-CODE UnmappedVar
        // @skip WS-SPREAD UnmappedVar
        // @skip WS-SQUARES LocalInTarget
        // @skip WS-STATUS-TEXT UnmappedVar
        // @skip WS-CHANNEL-NAME UnmappedVar call 1 occurrence 1
        // @skip WS-CONTAINER-LEN UnmappedVar call 1 occurrence 1
    }

    @Test
    void t02() {
        Chann11 target = new Chann11();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        // mocks
        stubs.sequence(1).thenReturn("0:0", "00000000");
        // mock note: call 2 occurrence 1 unmatched: no mock entry
        // mock note: call 3 occurrence 1 unmatched: no mock entry
        // mock note: sequence 2 matches no source call
        // mock note: sequence 3 matches no source call
        // invocation
        target.firstSentence();
        // assertions
        // @assert program WS-CNT wsCnt "004"
        assertEquals("004", OrderedStubs.text(target.wsCnt));
        // @assert program WS-TOTAL wsTotal "00006"
        assertEquals("00006", OrderedStubs.text(target.wsTotal));
        // @assert resource 1 1 WS-CONTAINER-NAME 1/0:1 "TOTALS          "
        assertEquals("TOTALS          ", stubs.sequence(1).captured(1, "0:1"));
        // @assert resource 1 1 WS-TOTAL 1/0:3 "00006"
        assertEquals("00006", stubs.sequence(1).captured(1, "0:3"));
        // @skip WS-AUDIT-TRAN UnmappedVar
        // @skip WS-AVERAGE UnmappedVar
        // @skip WS-CHANNEL-NAME UnmappedVar
        // @skip WS-CONTAINER-LEN UnmappedVar
        // @skip WS-CONTAINER-NAME LocalInTarget
        // @skip WS-EXIT-EARLY LocalInTarget
        // @skip WS-LAST-SLOT LocalInTarget
        // @skip WS-LIMIT LocalInTarget
        // @skip WS-LOOP-ITERATIONS LocalInTarget
        // @skip WS-PROGRAM-NAME UnmappedVar
        // @skip WS-REPLY-CONTAINER UnmappedVar
        // @skip WS-REPLY-LEN UnmappedVar
        // @skip WS-REPLY-TEXT LocalInTarget
        // @skip WS-RETURN-CODE UnmappedVar
        // @skip WS-SPREAD UnmappedVar
        // @skip WS-SQUARES LocalInTarget
        // @skip WS-STATUS-TEXT UnmappedVar
        // @skip WS-CHANNEL-NAME UnmappedVar call 1 occurrence 1
        // @skip WS-CONTAINER-LEN UnmappedVar call 1 occurrence 1
        // @skip WS-PROGRAM-NAME UnmatchedCall call 2 occurrence 1
        // @skip WS-CHANNEL-NAME UnmatchedCall call 2 occurrence 1
        // @skip WS-AUDIT-TRAN UnmatchedCall call 2 occurrence 1
        // @skip WS-REPLY-CONTAINER UnmatchedCall call 3 occurrence 1
        // @skip WS-CHANNEL-NAME UnmatchedCall call 3 occurrence 1
        // @skip WS-REPLY-LEN UnmatchedCall call 3 occurrence 1
    }
}
