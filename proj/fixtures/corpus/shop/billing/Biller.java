package shop.billing;

public class Biller implements Gateway {
    Money fee;
    int issued;

    Invoice issue(String ref, Money amount) {
        issued = issued + 1;
        Money total = amount.add(fee).negate();
        Invoice inv;
        inv.stamp(ref);
        return inv;
    }

    boolean charge(Invoice invoice) {
        Money due = invoice.amountDue();
        boolean ok = due.positive();
        return ok;
    }

    String name() {
        return "biller";
    }
}
