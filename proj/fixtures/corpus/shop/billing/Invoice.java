package shop.billing;

public class Invoice {
    Money total;
    String ref;

    Money amountDue() {
        Money t = total;
        return t;
    }

    void stamp(String r) {
        this.ref = r;
    }
}
