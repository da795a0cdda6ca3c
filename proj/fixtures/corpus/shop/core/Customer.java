package shop.core;

import shop.billing.Biller;
import shop.billing.Invoice;
import shop.billing.Money;

public class Customer extends Entity {
    String name;
    int points;
    Biller biller;

    Invoice invoiceFor(Money amount) {
        points = points + 1;
        Invoice inv = biller.issue(this.name, amount);
        return inv;
    }

    void rename(String name) {
        this.name = name;
    }
}
