package shop.core;

import shop.billing.Invoice;
import shop.billing.Money;

public class Order extends Entity implements Identified {
    Customer cust;
    Money total;
    int lines;

    Invoice bill() {
        Money t = this.total;
        Invoice inv = cust.invoiceFor(t);
        return inv;
    }

    void addLine(OrderLine line, int qty) {
        lines = lines + qty;
        total = total.add(line.price());
    }

    int bonus() {
        int b = cust.loyaltyBonus();
        return b;
    }
}
