package shop.core;

import shop.billing.Money;

public class OrderLine {
    String sku;
    int qty;
    Money each;

    Money price() {
        Money p = each.times(qty);
        return p;
    }

    int quantity() {
        return qty;
    }
}
