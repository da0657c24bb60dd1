// Validation tests for ICGCUDAT paragraph GET-CUSTOMER-DATA
// Target: Icgcudat.getCustomerData
// Mocks use the OrderedStubs facade: each thenReturn call queues one value set,
// consumed by successive invocations of the matched call sequence.
import org.junit.jupiter.api.Test;

import static org.junit.jupiter.api.Assertions.assertEquals;

public class Icgcudat_GET_CUSTOMER_DATA_Test {

    @Test
    void t01() {
        Icgcudat target = new Icgcudat();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caCustId = OrderedStubs.value("          ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // invocation
        target.getCustomerData();
        // assertions
        // @assert program CA-RETURN-CODE caReturnCode "90"
        assertEquals("90", OrderedStubs.text(target.caReturnCode));
        // @skip CPCB-DBD-NAME UnmappedVar
        // @skip CPCB-PROC-OPT UnmappedVar
        // @skip CPCB-SEG-LEVEL UnmappedVar
        // @skip CPCB-STATUS UnmappedVar
        // @skip CSSA-KEY-VALUE UnmappedVar
        // @skip CSSA-QUALIFIER UnmappedVar
        // @skip CSSA-SEG-NAME UnmappedVar
        // @skip CUS-ADDRESS UnmappedVar
        // @skip CUS-CREDIT-SCORE UnmappedVar
        // @skip CUS-DOB UnmappedVar
        // @skip CUS-ID UnmappedVar
        // @skip CUS-NAME UnmappedVar
        // @skip CUS-PHONE UnmappedVar
        // @skip CUS-SEGMENT UnmappedVar
        // @skip WS-FUNC LocalInTarget
        // @skip WS-FUNC UnmatchedCall call 1 occurrence 1
        // @skip CPCB-DBD-NAME UnmatchedCall call 1 occurrence 1
        // @skip CPCB-SEG-LEVEL UnmatchedCall call 1 occurrence 1
        // @skip CPCB-STATUS UnmatchedCall call 1 occurrence 1
        // @skip CPCB-PROC-OPT UnmatchedCall call 1 occurrence 1
        // @skip CUS-ID UnmatchedCall call 1 occurrence 1
        // @skip CUS-NAME UnmatchedCall call 1 occurrence 1
        // @skip CUS-ADDRESS UnmatchedCall call 1 occurrence 1
        // @skip CUS-PHONE UnmatchedCall call 1 occurrence 1
        // @skip CUS-DOB UnmatchedCall call 1 occurrence 1
        // @skip CUS-SEGMENT UnmatchedCall call 1 occurrence 1
        // @skip CUS-CREDIT-SCORE UnmatchedCall call 1 occurrence 1
        // @skip CSSA-SEG-NAME UnmatchedCall call 1 occurrence 1
        // @skip CSSA-QUALIFIER UnmatchedCall call 1 occurrence 1
        // @skip CSSA-KEY-VALUE UnmatchedCall call 1 occurrence 1
    }

    @Test
    void t02() {
        Icgcudat target = new Icgcudat();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caCustId = OrderedStubs.value("          ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // invocation
        target.getCustomerData();
        // assertions
        // @assert program CA-RETURN-CODE caReturnCode "01"
        assertEquals("01", OrderedStubs.text(target.caReturnCode));
        // @skip CPCB-DBD-NAME UnmappedVar
        // @skip CPCB-PROC-OPT UnmappedVar
        // @skip CPCB-SEG-LEVEL UnmappedVar
        // @skip CPCB-STATUS UnmappedVar
        // @skip CSSA-KEY-VALUE UnmappedVar
        // @skip CSSA-QUALIFIER UnmappedVar
        // @skip CSSA-SEG-NAME UnmappedVar
        // @skip CUS-ADDRESS UnmappedVar
        // @skip CUS-CREDIT-SCORE UnmappedVar
        // @skip CUS-DOB UnmappedVar
        // @skip CUS-ID UnmappedVar
        // @skip CUS-NAME UnmappedVar
        // @skip CUS-PHONE UnmappedVar
        // @skip CUS-SEGMENT UnmappedVar
        // @skip WS-FUNC LocalInTarget
        // @skip WS-FUNC UnmatchedCall call 1 occurrence 1
        // @skip CPCB-DBD-NAME UnmatchedCall call 1 occurrence 1
        // @skip CPCB-SEG-LEVEL UnmatchedCall call 1 occurrence 1
        // @skip CPCB-STATUS UnmatchedCall call 1 occurrence 1
        // @skip CPCB-PROC-OPT UnmatchedCall call 1 occurrence 1
        // @skip CUS-ID UnmatchedCall call 1 occurrence 1
        // @skip CUS-NAME UnmatchedCall call 1 occurrence 1
        // @skip CUS-ADDRESS UnmatchedCall call 1 occurrence 1
        // @skip CUS-PHONE UnmatchedCall call 1 occurrence 1
        // @skip CUS-DOB UnmatchedCall call 1 occurrence 1
        // @skip CUS-SEGMENT UnmatchedCall call 1 occurrence 1
        // @skip CUS-CREDIT-SCORE UnmatchedCall call 1 occurrence 1
        // @skip CSSA-SEG-NAME UnmatchedCall call 1 occurrence 1
        // @skip CSSA-QUALIFIER UnmatchedCall call 1 occurrence 1
        // @skip CSSA-KEY-VALUE UnmatchedCall call 1 occurrence 1
    }

    @Test
    void t03() {
        Icgcudat target = new Icgcudat();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caCustId = OrderedStubs.value("          ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // invocation
        target.getCustomerData();
        // assertions
        // @assert program CA-RETURN-CODE caReturnCode "00"
        assertEquals("00", OrderedStubs.text(target.caReturnCode));
        // @skip CPCB-DBD-NAME UnmappedVar
        // @skip CPCB-PROC-OPT UnmappedVar
        // @skip CPCB-SEG-LEVEL UnmappedVar
        // @skip CPCB-STATUS UnmappedVar
        // @skip CSSA-KEY-VALUE UnmappedVar
        // @skip CSSA-QUALIFIER UnmappedVar
        // @skip CSSA-SEG-NAME UnmappedVar
        // @skip CUS-ADDRESS UnmappedVar
        // @skip CUS-CREDIT-SCORE UnmappedVar
        // @skip CUS-DOB UnmappedVar
        // @skip CUS-ID UnmappedVar
        // @skip CUS-NAME UnmappedVar
        // @skip CUS-PHONE UnmappedVar
        // @skip CUS-SEGMENT UnmappedVar
        // @skip WS-FUNC LocalInTarget
        // @skip WS-FUNC UnmatchedCall call 1 occurrence 1
        // @skip CPCB-DBD-NAME UnmatchedCall call 1 occurrence 1
        // @skip CPCB-SEG-LEVEL UnmatchedCall call 1 occurrence 1
        // @skip CPCB-STATUS UnmatchedCall call 1 occurrence 1
        // @skip CPCB-PROC-OPT UnmatchedCall call 1 occurrence 1
        // @skip CUS-ID UnmatchedCall call 1 occurrence 1
        // @skip CUS-NAME UnmatchedCall call 1 occurrence 1
        // @skip CUS-ADDRESS UnmatchedCall call 1 occurrence 1
        // @skip CUS-PHONE UnmatchedCall call 1 occurrence 1
        // @skip CUS-DOB UnmatchedCall call 1 occurrence 1
        // @skip CUS-SEGMENT UnmatchedCall call 1 occurrence 1
        // @skip CUS-CREDIT-SCORE UnmatchedCall call 1 occurrence 1
        // @skip CSSA-SEG-NAME UnmatchedCall call 1 occurrence 1
        // @skip CSSA-QUALIFIER UnmatchedCall call 1 occurrence 1
        // @skip CSSA-KEY-VALUE UnmatchedCall call 1 occurrence 1
    }
}
