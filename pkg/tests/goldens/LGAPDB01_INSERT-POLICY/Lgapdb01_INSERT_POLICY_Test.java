// Validation tests for LGAPDB01 paragraph INSERT-POLICY
// Target: Lgapdb01.insertPolicy
// Mocks use the OrderedStubs facade: each thenReturn call queues one value set,
// consumed by successive invocations of the matched call sequence.
import org.junit.jupiter.api.Test;

import static org.junit.jupiter.api.Assertions.assertEquals;

public class Lgapdb01_INSERT_POLICY_Test {

    @Test
    void t01() {
        Lgapdb01 target = new Lgapdb01();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caBrokerId = OrderedStubs.value("000000000");
        target.caBrokerRef = OrderedStubs.value("          ");
        target.caCommission = OrderedStubs.value("0000");
        target.caCustomerNum = OrderedStubs.value("000000000");
        target.caExpiryDate = OrderedStubs.value("          ");
        target.caIssueDate = OrderedStubs.value("          ");
        target.caPayment = OrderedStubs.value("000000000");
        target.caPolicyType = OrderedStubs.value(" ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: call 2 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // mock note: sequence 2 matches no source call
        // invocation
        target.insertPolicy();
        // assertions
        // @assert program CA-ISSUE-STATUS caIssueStatus "A"
        assertEquals("A", OrderedStubs.text(target.caIssueStatus));
        // @assert program CA-LASTCHANGED caLastchanged "          "
        assertEquals("          ", OrderedStubs.text(target.caLastchanged));
        // @assert program CA-POLICY-NUM caPolicyNum "000000001"
        assertEquals("000000001", OrderedStubs.text(target.caPolicyNum));
        // @assert program CA-RETURN-CODE caReturnCode "00"
        assertEquals("00", OrderedStubs.text(target.caReturnCode));
        // @skip DB2-C-CUSTNUM LocalInTarget
        // @skip DB2-C-LASTPOL LocalInTarget
        // @skip DB2-P-BROKERID LocalInTarget
        // @skip DB2-P-BROKERREF LocalInTarget
        // @skip DB2-P-COMMISSION LocalInTarget
        // @skip DB2-P-CUSTNUM LocalInTarget
        // @skip DB2-P-EXPIRY LocalInTarget
        // @skip DB2-P-ISSUE LocalInTarget
        // @skip DB2-P-LASTCHG LocalInTarget
        // @skip DB2-P-PAYMENT LocalInTarget
        // @skip DB2-P-STATUS LocalInTarget
        // @skip DB2-P-TYPE LocalInTarget
        // @skip WS-ERR-PROGRAM LocalInTarget
        // @skip DB2-P-CUSTNUM UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-ISSUE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-EXPIRY UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-TYPE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERID UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERREF UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-PAYMENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-COMMISSION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-LASTCHG UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-STATUS UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-AGENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CHANNEL UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-REGION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CURRENCY UnmatchedCall call 1 occurrence 1
        // @skip DB2-C-POLCOUNT UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-LASTPOL UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-LASTCHG UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-STATUS UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-REGION UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-AGENT UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-CUSTNUM UnmatchedCall call 2 occurrence 1
    }

    @Test
    void t02() {
        Lgapdb01 target = new Lgapdb01();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caBrokerId = OrderedStubs.value("000000000");
        target.caBrokerRef = OrderedStubs.value("          ");
        target.caCommission = OrderedStubs.value("0000");
        target.caCustomerNum = OrderedStubs.value("000000000");
        target.caExpiryDate = OrderedStubs.value("          ");
        target.caIssueDate = OrderedStubs.value("          ");
        target.caPayment = OrderedStubs.value("000000000");
        target.caPolicyType = OrderedStubs.value(" ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: call 2 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // mock note: sequence 2 matches no source call
        // invocation
        target.insertPolicy();
        // assertions
        // @assert program CA-POLICY-NUM caPolicyNum "000000001"
        assertEquals("000000001", OrderedStubs.text(target.caPolicyNum));
        // @assert program CA-RETURN-CODE caReturnCode "91"
        assertEquals("91", OrderedStubs.text(target.caReturnCode));
        // @skip DB2-C-CUSTNUM LocalInTarget
        // @skip DB2-C-LASTPOL LocalInTarget
        // @skip DB2-P-BROKERID LocalInTarget
        // @skip DB2-P-BROKERREF LocalInTarget
        // @skip DB2-P-COMMISSION LocalInTarget
        // @skip DB2-P-CUSTNUM LocalInTarget
        // @skip DB2-P-EXPIRY LocalInTarget
        // @skip DB2-P-ISSUE LocalInTarget
        // @skip DB2-P-LASTCHG LocalInTarget
        // @skip DB2-P-PAYMENT LocalInTarget
        // @skip DB2-P-STATUS LocalInTarget
        // @skip DB2-P-TYPE LocalInTarget
        // @skip WS-ERR-ACTION LocalInTarget
        // @skip WS-ERR-PROGRAM LocalInTarget
        // @skip DB2-P-CUSTNUM UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-ISSUE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-EXPIRY UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-TYPE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERID UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERREF UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-PAYMENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-COMMISSION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-LASTCHG UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-STATUS UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-AGENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CHANNEL UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-REGION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CURRENCY UnmatchedCall call 1 occurrence 1
        // @skip DB2-C-POLCOUNT UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-LASTPOL UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-LASTCHG UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-STATUS UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-REGION UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-AGENT UnmatchedCall call 2 occurrence 1
        // @skip DB2-C-CUSTNUM UnmatchedCall call 2 occurrence 1
    }

    @Test
    void t03() {
        Lgapdb01 target = new Lgapdb01();
        OrderedStubs stubs = OrderedStubs.install(target);
        // initialization
        target.caBrokerId = OrderedStubs.value("000000000");
        target.caBrokerRef = OrderedStubs.value("          ");
        target.caCommission = OrderedStubs.value("0000");
        target.caCustomerNum = OrderedStubs.value("000000000");
        target.caExpiryDate = OrderedStubs.value("          ");
        target.caIssueDate = OrderedStubs.value("          ");
        target.caPayment = OrderedStubs.value("000000000");
        target.caPolicyType = OrderedStubs.value(" ");
        // mocks
        // mock note: call 1 occurrence 1 unmatched: no mock entry
        // mock note: sequence 1 matches no source call
        // mock note: sequence 2 matches no source call
        // invocation
        target.insertPolicy();
        // assertions
        // @assert program CA-RETURN-CODE caReturnCode "90"
        assertEquals("90", OrderedStubs.text(target.caReturnCode));
        // @skip DB2-P-BROKERID LocalInTarget
        // @skip DB2-P-BROKERREF LocalInTarget
        // @skip DB2-P-COMMISSION LocalInTarget
        // @skip DB2-P-CUSTNUM LocalInTarget
        // @skip DB2-P-EXPIRY LocalInTarget
        // @skip DB2-P-ISSUE LocalInTarget
        // @skip DB2-P-LASTCHG LocalInTarget
        // @skip DB2-P-PAYMENT LocalInTarget
        // @skip DB2-P-STATUS LocalInTarget
        // @skip DB2-P-TYPE LocalInTarget
        // @skip WS-ERR-ACTION LocalInTarget
        // @skip WS-ERR-PROGRAM LocalInTarget
        // @skip WS-SQLCODE-DISPLAY LocalInTarget
        // @skip DB2-P-CUSTNUM UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-ISSUE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-EXPIRY UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-TYPE UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERID UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-BROKERREF UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-PAYMENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-COMMISSION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-LASTCHG UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-STATUS UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-AGENT UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CHANNEL UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-REGION UnmatchedCall call 1 occurrence 1
        // @skip DB2-P-CURRENCY UnmatchedCall call 1 occurrence 1
    }
}
